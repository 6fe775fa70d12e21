#include <doctest.h>

#include <random>

#include "ldc/constructions.hpp"
#include "ldc/exponential.hpp"
#include "ldc/fixtures.hpp"

using namespace ldc;
using O = ObjectExpr;

namespace {

Mat random_matrix(std::mt19937& rng, int r, int c) {
  std::normal_distribution<double> n;
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = cd(n(rng), n(rng));
  return m;
}

Mat column(const MultisetBasis& b, const Multiset& m) {
  Mat v = Mat::Zero(b.size(), 1);
  v(b.index_of(m), 0) = 1.0;
  return v;
}

// rows and columns whose multisets have total size within d
Mat window(const Mat& m, const std::vector<int>& row_deg, const std::vector<int>& col_deg, int d) {
  std::vector<int> rows, cols;
  for (int i = 0; i < static_cast<int>(row_deg.size()); ++i)
    if (row_deg[i] <= d) rows.push_back(i);
  for (int j = 0; j < static_cast<int>(col_deg.size()); ++j)
    if (col_deg[j] <= d) cols.push_back(j);
  Mat r(rows.size(), cols.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) r(i, j) = m(rows[i], cols[j]);
  return r;
}

std::vector<int> pair_degrees(const MultisetBasis& a, const MultisetBasis& b) {
  std::vector<int> r;
  for (int x : degrees(a))
    for (int y : degrees(b)) r.push_back(x + y);
  return r;
}

} // namespace

TEST_CASE("multiset basis sizes and labels") {
  MultisetBasis b(2, 3);
  CHECK(b.size() == 10);
  CHECK(MultisetBasis(10, 3).size() == 286);
  CHECK(b.label(b.index_of({0, 0, 1}), {"a", "b"}) == "[a,a,b]");
  CHECK(b.label(0, {"a", "b"}) == "[]");
  CHECK(b.index_of({0, 0, 0, 0}) == -1);
}

TEST_CASE("comultiplication and counit on a one-element base") {
  ExpStructure x = build_exp(1, 2);
  const MultisetBasis& b = x.basis;
  Mat expected = kron(column(b, {}), column(b, {0})) + kron(column(b, {0}), column(b, {}));
  CHECK(matrices_equal(x.Delta * column(b, {0}), expected, 0.0).equal);
  CHECK(x.e(0, b.index_of({})) == cd(1.0));
  CHECK(x.e(0, b.index_of({0})) == cd(0.0));
  CHECK(x.eps(0, b.index_of({0})) == cd(1.0));
  CHECK(x.eps(0, b.index_of({0, 0})) == cd(0.0));
}

TEST_CASE("comonoid laws are exact with integer entries") {
  ExpStructure x = build_exp(2, 3);
  const int n = x.basis.size();
  Mat I = Mat::Identity(n, n);
  CHECK(matrices_equal(kron(x.Delta, I) * x.Delta, kron(I, x.Delta) * x.Delta, 0.0).equal);
  CHECK(matrices_equal(kron(x.e, I) * x.Delta, I, 0.0).equal);
  CHECK(matrices_equal(kron(I, x.e) * x.Delta, I, 0.0).equal);
  CHECK(matrices_equal(swap_matrix(n, n) * x.Delta, x.Delta, 0.0).equal);
  for (int i = 0; i < x.Delta.rows(); ++i)
    for (int j = 0; j < x.Delta.cols(); ++j) CHECK(x.Delta(i, j) == cd(std::round(x.Delta(i, j).real())));
  CHECK(x.delta.rows() == 286);
}

TEST_CASE("comonad laws") {
  ExpStructure x = build_exp(2, 3);
  CHECK(comonad_associativity_residual(x) <= 1e-9);
  Gadget g = exp_gadget(2, 3);
  for (const char* s : {"bang-comonoid", "bang-comonad", "dagger-bang-coherence"}) {
    CAPTURE(s);
    SuiteReport r = check_suite(g, s, 1e-9);
    CHECK(r.pass);
    CHECK(r.worst() <= 1e-9);
  }
}

TEST_CASE("bang functor") {
  const int d = 3;
  CHECK(matrices_equal(bang_functor(Mat::Identity(2, 2), d), Mat::Identity(10, 10), 0.0).equal);
  std::mt19937 rng(9);
  Mat f = random_matrix(rng, 3, 2);
  CHECK(bang_functor(f, d)(0, 0) == cd(1.0));
  const cd c(0.7, -0.4);
  Mat one(1, 1);
  one(0, 0) = c;
  Mat bf = bang_functor(one, d);
  MultisetBasis b(1, d);
  for (int k = 0; k <= d; ++k) {
    Multiset m(k, 0);
    CHECK(std::abs(bf(b.index_of(m), b.index_of(m)) - std::pow(c, k)) < 1e-14);
  }
  for (int t = 0; t < 50; ++t) {
    Mat g1 = random_matrix(rng, 2, 3), g2 = random_matrix(rng, 3, 2);
    Mat lhs = bang_functor(g2 * g1, d);
    Mat rhs = bang_functor(g2, d) * bang_functor(g1, d);
    CHECK(matrices_equal(lhs, rhs, 1e-10).equal);
  }
  Mat q = quest_functor(f, d);
  CHECK(matrices_equal(q, bang_functor(f.adjoint(), d).adjoint(), 1e-14).equal);
}

TEST_CASE("lift of a point from the trivial comonoid is group-like") {
  std::mt19937 rng(4);
  Mat u = random_matrix(rng, 2, 1);
  Mat one = Mat::Ones(1, 1);
  Mat F = lift_flat(Comonoid{one, one}, u, 3);
  MultisetBasis b(2, 3);
  for (int i = 0; i < b.size(); ++i) {
    cd expected = 1.0;
    for (int a : b.at(i)) expected *= u(a, 0);
    CHECK(std::abs(F(i, 0) - expected) < 1e-12);
  }
}

TEST_CASE("lift of the identity along the copy comonoid retracts onto A") {
  Gadget q = qubit_zx_gadget();
  Mat F = lift_flat(Comonoid{q.morphism("d"), q.morphism("k")}, Mat::Identity(2, 2), 3);
  ExpStructure x = build_exp(2, 3);
  CHECK(matrices_equal(x.eps * F, Mat::Identity(2, 2), 0.0).equal);
  // comonoid morphism on the window where no truncation intervenes
  Mat lhs = x.Delta * F, rhs = kron(F, F) * q.morphism("d");
  CHECK(matrices_equal(window(lhs, pair_degrees(x.basis, x.basis), std::vector<int>(2, 0), 3),
                       window(rhs, pair_degrees(x.basis, x.basis), std::vector<int>(2, 0), 3), 1e-12)
            .equal);
}

TEST_CASE("lifting dereliction recovers the identity") {
  ExpStructure x = build_exp(2, 3);
  Mat F = lift_flat(Comonoid{x.Delta, x.e}, x.eps, 3);
  CHECK(matrices_equal(F, Mat::Identity(10, 10), 1e-12).equal);
  Mat S = lift_sharp(Monoid{x.nabla, x.unit_u}, x.eps.adjoint(), 3);
  CHECK(matrices_equal(S, Mat::Identity(10, 10), 1e-12).equal);
}

TEST_CASE("lift_sharp") {
  Gadget q = qubit_zx_gadget();
  ExpStructure x = build_exp(2, 3);
  Mat S = lift_sharp(Monoid{q.morphism("m"), q.morphism("u")}, Mat::Identity(2, 2), 3);
  CHECK(matrices_equal(S * x.eps.adjoint(), Mat::Identity(2, 2), 1e-12).equal);

  // a random commutative two-dimensional algebra: x^2 = a x + b
  std::mt19937 rng(21);
  std::normal_distribution<double> n;
  cd a(n(rng), n(rng)), bb(n(rng), n(rng));
  Mat m = Mat::Zero(2, 4);
  m(0, 0) = 1.0;
  m(1, 1) = m(1, 2) = 1.0;
  m(0, 3) = bb;
  m(1, 3) = a;
  Mat u = Mat::Zero(2, 1);
  u(0, 0) = 1.0;
  Mat g = random_matrix(rng, 2, 2);
  Mat G = lift_sharp(Monoid{m, u}, g, 3);
  Mat lhs = G * x.nabla, rhs = m * kron(G, G);
  auto pd = pair_degrees(x.basis, x.basis);
  std::vector<int> zero(2, 0);
  CHECK(matrices_equal(window(lhs, zero, pd, 3), window(rhs, zero, pd, 3), 1e-9).equal);
  CHECK(matrices_equal(G * x.unit_u, u, 1e-9).equal);
}

TEST_CASE("monoidal structure") {
  MonoidalMaps d1 = monoidal_structure(1, 1, 1);
  CHECK(std::abs(d1.m_tensor(0, 0) - cd(1.0)) < 1e-12);

  const int na = 2, nb = 2, d = 3;
  MonoidalMaps mm = monoidal_structure(na, nb, d);
  MultisetBasis A(na, d), B(nb, d), AB(na * nb, d);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b)
      for (int a2 = 0; a2 < na; ++a2)
        for (int b2 = 0; b2 < nb; ++b2) {
          int col = A.index_of({a}) * B.size() + B.index_of({b});
          cd v = mm.m_tensor(AB.index_of({a2 * nb + b2}), col);
          CHECK(std::abs(v - cd(a == a2 && b == b2 ? 1.0 : 0.0)) < 1e-12);
        }
  double worst = 0;
  for (int i = A.block_start(1); i < A.block_start(1) + A.block_size(1); ++i)
    for (int j = B.block_start(2); j < B.block_start(2) + B.block_size(2); ++j)
      worst = std::max(worst, mm.m_tensor.col(i * B.size() + j).cwiseAbs().maxCoeff());
  CHECK(worst < 1e-12);
  CHECK(matrices_equal(mm.nu_tensor, mm.m_tensor.adjoint(), 0.0).equal);
}

TEST_CASE("induced bialgebra on the exponential") {
  Gadget q = qubit_zx_gadget();
  Gadget g2 = induce_bang_monoid(q, 2);
  SuiteReport r = check_suite(g2, "linear-bialgebra", 1e-9);
  CHECK(r.pass);
  CHECK(r.worst() <= 1e-9);

  Gadget trivial = monoid_gadget("linear-monoid", {"*"}, Mat::Ones(1, 1), Mat::Ones(1, 1));
  Gadget t = induce_bang_monoid(trivial, 3);
  CHECK(t.morphism("m").rows() == 4);
  CHECK(check_suite(t, "linear-bialgebra", 0.0).pass);
}

TEST_CASE("retraction onto the base") {
  RetractResult rr = retract_idempotent(qubit_zx_gadget(), 3);
  CHECK(rr.retraction == 0.0);
  CHECK(rr.idempotent == 0.0);
  ComplementaryVerdict v = complementary_from_idempotent(rr.bang, rr.split);
  CHECK(matrices_equal(v.split.morphism("m"), qubit_zx_gadget().morphism("m"), 1e-8).equal);
}
