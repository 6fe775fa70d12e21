#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "ldc/circuit.hpp"

namespace ldc {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;

struct AtomSpec {
  int dim = 1;
  std::vector<std::string> basis;
};

struct ModelEnv {
  std::map<std::string, AtomSpec> atoms;
  int degree = 3;
  std::map<std::string, Mat> generators;

  void add_atom(const std::string& name, int dim);
};

struct Basis {
  int dim = 1;
  std::vector<std::string> labels;
  // total multiset size of each element, summed over the exponential factors
  std::vector<int> degree;
};

struct UnboundAtom : std::runtime_error {
  explicit UnboundAtom(const std::string& n) : std::runtime_error("unbound atom " + n), name(n) {}
  std::string name;
};
struct UnassignedGenerator : std::runtime_error {
  explicit UnassignedGenerator(const std::string& n) : std::runtime_error("unassigned generator " + n), name(n) {}
  std::string name;
};
struct ShapeMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotIdempotent : std::runtime_error {
  explicit NotIdempotent(double r)
      : std::runtime_error("not idempotent, residual " + std::to_string(r)), residual(r) {}
  double residual;
};

Basis interp(const Obj& t, const ModelEnv& env);
int dim_of(const Obj& t, const ModelEnv& env);

// Factor wire types into the single-index legs the contraction works on.
std::vector<Obj> leaves(const Obj& t);

// Matrix from interp(inputs) to interp(outputs). Generators named with a
// leading '$' are structural isomorphisms and evaluate to identities.
Mat evaluate(const Circuit& c, const ModelEnv& env);

struct Comparison {
  bool equal;
  double residual;
};
Comparison matrices_equal(const Mat& a, const Mat& b, double tol);

struct Splitting {
  Mat r;  // k x n
  Mat s;  // n x k
};
Splitting split_idempotent(const Mat& e, double tol);

Mat kron(const Mat& a, const Mat& b);
Mat swap_matrix(int da, int db);

nlohmann::json matrix_to_json(const Mat& m);
Mat matrix_from_json(const nlohmann::json& j);

} // namespace ldc
