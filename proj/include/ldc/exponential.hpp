#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ldc/model.hpp"
#include "ldc/multiset.hpp"

namespace ldc {

struct NotAComonoid : std::runtime_error {
  explicit NotAComonoid(double r) : std::runtime_error("not a comonoid, residual " + std::to_string(r)), residual(r) {}
  double residual;
};
struct LiftFailure : std::runtime_error {
  explicit LiftFailure(double r) : std::runtime_error("lift constraints inconsistent, residual " + std::to_string(r)), residual(r) {}
  double residual;
};

// Structure maps of the truncated free exponential on a space of dimension n.
struct ExpStructure {
  int n = 0;
  int d = 0;
  MultisetBasis basis;    // !A
  MultisetBasis basis2;   // !!A, multisets over the elements of !A
  Mat Delta;              // !A -> !A (x) !A
  Mat e;                  // !A -> T
  Mat eps;                // !A -> A
  Mat delta;              // !A -> !!A
  Mat nabla, unit_u, eta, mu;  // daggers of the above
  Mat s_iso, t_iso;       // identities in this model
};

ExpStructure build_exp(int n, int d);

// Comultiplication on !A without the dense matrix.
Mat exp_comultiplication(const MultisetBasis& b);
// !A -> !!A for an arbitrary multiset basis.
Mat exp_digging(const MultisetBasis& b, const MultisetBasis& outer);

// !f : !A -> !B for f : A -> B (matrix |B| x |A|), both truncated at d.
Mat bang_functor(const Mat& f, int d);
// ?f := (!(f^dagger))^dagger
Mat quest_functor(const Mat& f, int d);

struct Comonoid {
  Mat d;  // C -> C (x) C
  Mat k;  // C -> T
};
struct Monoid {
  Mat m;  // M (x) M -> M
  Mat u;  // T -> M
};

// Unique comonoid morphism C -> !A lifting f : C -> A.
Mat lift_flat(const Comonoid& c, const Mat& f, int d, double tol = 1e-9);
// Unique monoid morphism ?B -> M lifting g : B -> M.
Mat lift_sharp(const Monoid& m, const Mat& g, int d, double tol = 1e-9);

struct MonoidalMaps {
  Mat m_top;     // T -> !T
  Mat m_tensor;  // !A (x) !B -> !(A (x) B)
  Mat nu_tensor; // its dagger
};
MonoidalMaps monoidal_structure(int na, int nb, int d, double tol = 1e-9);

// Residual of delta;!delta = delta;delta on outputs whose inner sizes sum to at most d.
double comonad_associativity_residual(const ExpStructure& x);

// Degree (multiset size) of each basis element of !A.
std::vector<int> degrees(const MultisetBasis& b);

} // namespace ldc
