#pragma once

#include <string>

#include "ldc/exponential.hpp"
#include "ldc/gadget.hpp"
#include "ldc/suites.hpp"

namespace ldc {

// Matrices below compose in diagrammatic order: f;g is G * F.

struct BinarySplit {
  Splitting a;     // uv = A -r-> E -s-> A
  Splitting b;     // vu = B -p-> E' -q-> B
  Mat alpha;       // s;u;p : E -> E'
  Mat beta;        // q;v;r : E' -> E
  double alpha_beta = 0.0;  // residual of alpha;beta = 1
  double beta_alpha = 0.0;
};
// Roles idem_u : A -> B, idem_v : B -> A.
BinarySplit split_binary_idempotent(const Gadget& g, double tol = 1e-9);

struct PreunitaryResult {
  Mat alpha;  // s;u;s^dagger
  SuiteReport report;
};
PreunitaryResult weak_preunitary_from_dagger_split(const Gadget& g, double tol = 1e-9);

// Linear monoid (m, u and both duals) to the actions presentation and back.
Gadget monoid_to_actions(const Gadget& g, double tol = 1e-9);
Gadget actions_to_monoid(const Gadget& g, double tol = 1e-9);

// Splittings of idempotents eA on A and eB on B.
struct SplitPair {
  Mat r, s;    // A -> E, E -> A
  Mat r2, s2;  // B -> E', E' -> B
};
SplitPair split_pair(const Mat& eA, const Mat& eB, double tol = 1e-9);

// Each reads roles eA, eB from g and checks the sectional (or retractional)
// preconditions before transporting the structure along the splitting.
Gadget split_linear_monoid(const Gadget& g, double tol = 1e-9);
Gadget split_linear_comonoid(const Gadget& g, double tol = 1e-9);
Gadget split_linear_bialgebra(const Gadget& g, double tol = 1e-9);
// Same transport along a given splitting, without precondition checks.
Gadget transport_monoid(const Gadget& g, const SplitPair& sp);
Gadget transport_comonoid(const Gadget& g, const SplitPair& sp);
Gadget transport_bialgebra(const Gadget& g, const SplitPair& sp);

// Linear monoid <-> linear comonoid by transposition of every role.
Gadget compact_reflection(const Gadget& g, double tol = 1e-9);

struct Antipodes {
  Mat s_tensor;
  Mat s_par;
  SuiteReport hopf;
};
Antipodes antipode(const Gadget& g, double tol = 1e-9);

// (eps^dagger, eta^dagger) as a dual B^dagger -| A^dagger.
Gadget dagger_of_dual(const Gadget& g, double tol = 1e-9);

struct ComplementaryVerdict {
  SuiteReport conditions;
  Gadget split;
  SuiteReport split_report;
};
// g: linear bialgebra with binary idempotent idem_u, idem_v.
ComplementaryVerdict complementary_from_idempotent(const Gadget& g, double tol = 1e-9);
ComplementaryVerdict complementary_from_idempotent(const Gadget& g, const SplitPair& sp, double tol = 1e-9);

// Structure maps of the truncated exponential as roles.
Gadget exp_gadget(int n, int d);

// Linear bialgebra on !A / ?A induced by a linear monoid on A.
Gadget induce_bang_monoid(const Gadget& g, int d, double tol = 1e-9);

struct RetractResult {
  Gadget bang;          // induced bialgebra with idem_u, idem_v
  Mat flat;             // A -> !A, lift of the identity
  Mat eps;              // !A -> A
  SplitPair split;      // r = eps, s = flat, r2 = flat^dagger, s2 = eps^dagger
  double retraction = 0.0;   // residual of flat;eps = 1
  double idempotent = 0.0;   // residual of e;e = e
};
RetractResult retract_idempotent(const Gadget& g, int d, double tol = 1e-9);

// The sectional condition for an idempotent, and whether its section is a morphism.
struct SectionCheck {
  bool condition = false;
  bool morphism = false;
};
SectionCheck dual_section_check(const Gadget& g, double tol = 1e-9);       // eta, eps, eA, eB
SectionCheck monoid_section_check(const Gadget& g, double tol = 1e-9);     // m, u, eA
SectionCheck comonoid_section_check(const Gadget& g, double tol = 1e-9);   // d, k, eA
SectionCheck bialgebra_section_check(const Gadget& g, double tol = 1e-9);  // m, u, d, k, eA

} // namespace ldc
