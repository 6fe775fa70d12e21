#include "ldc/exponential.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <Eigen/Sparse>

namespace ldc {

namespace {

using SpMat = Eigen::SparseMatrix<cd>;

SpMat sparse(const Mat& m) { return m.sparseView(); }

SpMat sparse_kron(const SpMat& a, const SpMat& b) {
  std::vector<Eigen::Triplet<cd>> t;
  for (int i = 0; i < a.outerSize(); ++i)
    for (SpMat::InnerIterator x(a, i); x; ++x)
      for (int j = 0; j < b.outerSize(); ++j)
        for (SpMat::InnerIterator y(b, j); y; ++y)
          t.emplace_back(x.row() * b.rows() + y.row(), x.col() * b.cols() + y.col(), x.value() * y.value());
  SpMat r(a.rows() * b.rows(), a.cols() * b.cols());
  r.setFromTriplets(t.begin(), t.end());
  return r;
}

SpMat sparse_identity(Eigen::Index n) {
  SpMat r(n, n);
  r.setIdentity();
  return r;
}

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }
double max_abs(const SpMat& m) {
  double r = 0;
  for (int i = 0; i < m.outerSize(); ++i)
    for (SpMat::InnerIterator x(m, i); x; ++x) r = std::max(r, std::abs(x.value()));
  return r;
}

} // namespace

std::vector<int> degrees(const MultisetBasis& b) {
  std::vector<int> r;
  for (const auto& m : b.elements()) r.push_back(static_cast<int>(m.size()));
  return r;
}

Mat exp_comultiplication(const MultisetBasis& b) {
  const int N = b.size();
  Mat D = Mat::Zero(static_cast<Eigen::Index>(N) * N, N);
  for (int i = 0; i < N; ++i)
    for (const auto& [l, r] : ordered_splits(b.at(i))) D(b.index_of(l) * N + b.index_of(r), i) = 1.0;
  return D;
}

Mat exp_digging(const MultisetBasis& b, const MultisetBasis& outer) {
  Mat D = Mat::Zero(outer.size(), b.size());
  for (int j = 0; j < outer.size(); ++j) {
    Multiset u;
    for (int p : outer.at(j)) u = multiset_union(u, b.at(p));
    int i = b.index_of(u);
    if (i >= 0) D(j, i) = 1.0;
  }
  return D;
}

ExpStructure build_exp(int n, int d) {
  if (d < 1) throw std::invalid_argument("degree bound must be at least 1");
  ExpStructure x;
  x.n = n;
  x.d = d;
  x.basis = MultisetBasis(n, d);
  x.basis2 = MultisetBasis(x.basis.size(), d);
  const int N = x.basis.size();
  x.Delta = exp_comultiplication(x.basis);
  x.e = Mat::Zero(1, N);
  x.e(0, 0) = 1.0;
  x.eps = Mat::Zero(n, N);
  for (int a = 0; a < n; ++a) x.eps(a, x.basis.index_of({a})) = 1.0;
  x.delta = exp_digging(x.basis, x.basis2);
  x.nabla = x.Delta.adjoint();
  x.unit_u = x.e.adjoint();
  x.eta = x.eps.adjoint();
  x.mu = x.delta.adjoint();
  x.s_iso = Mat::Identity(N, N);
  x.t_iso = Mat::Identity(N, N);
  return x;
}

Mat bang_functor(const Mat& f, int d) {
  const int na = static_cast<int>(f.cols()), nb = static_cast<int>(f.rows());
  MultisetBasis A(na, d), B(nb, d);
  Mat r = Mat::Zero(B.size(), A.size());
  for (int k = 0; k <= d; ++k)
    for (int i = A.block_start(k); i < A.block_start(k) + A.block_size(k); ++i) {
      const Multiset& m = A.at(i);
      double om = orderings(m);
      for (int j = B.block_start(k); j < B.block_start(k) + B.block_size(k); ++j) {
        Multiset w = B.at(j);
        cd sum = 0;
        do {
          cd p = 1;
          for (int t = 0; t < k; ++t) p *= f(w[t], m[t]);
          sum += p;
        } while (std::next_permutation(w.begin(), w.end()));
        r(j, i) = sum * (om / orderings(B.at(j)));
      }
    }
  return r;
}

Mat quest_functor(const Mat& f, int d) { return bang_functor(f.adjoint(), d).adjoint(); }

Mat lift_flat(const Comonoid& c, const Mat& f, int d, double tol) {
  const Eigen::Index C = c.d.cols();
  if (c.d.rows() != C * C || c.k.rows() != 1 || c.k.cols() != C || f.cols() != C)
    throw ShapeMismatch("lift_flat: comonoid or map has the wrong shape");
  SpMat D = sparse(c.d);
  SpMat I = sparse_identity(C);
  SpMat K = sparse(c.k);
  double scale = std::max({1.0, max_abs(c.d), max_abs(c.k)});
  double res = max_abs(SpMat(sparse_kron(D, I) * D - sparse_kron(I, D) * D));
  res = std::max(res, max_abs(Mat(Mat(sparse_kron(K, I) * D) - Mat::Identity(C, C))));
  res = std::max(res, max_abs(Mat(Mat(sparse_kron(I, K) * D) - Mat::Identity(C, C))));
  if (res > tol * scale) throw NotAComonoid(res);

  const int n = static_cast<int>(f.rows());
  MultisetBasis B(n, d);
  Mat F = Mat::Zero(B.size(), C);
  F.row(0) = c.k;
  for (int a = 0; a < n; ++a) F.row(B.index_of({a})) = f.row(a);
  // row (x, y) of the comultiplication applied to f(x) (x) F(y)
  auto paired = [&](const Eigen::RowVectorXcd& x, const Eigen::RowVectorXcd& y) {
    Eigen::RowVectorXcd out = Eigen::RowVectorXcd::Zero(C);
    for (int col = 0; col < D.outerSize(); ++col)
      for (SpMat::InnerIterator it(D, col); it; ++it)
        out(col) += it.value() * x(it.row() / C) * y(it.row() % C);
    return out;
  };
  for (int k = 2; k <= d; ++k)
    for (int i = B.block_start(k); i < B.block_start(k) + B.block_size(k); ++i) {
      const Multiset& m = B.at(i);
      Eigen::RowVectorXcd acc = Eigen::RowVectorXcd::Zero(C);
      int count = 0;
      for (size_t t = 0; t < m.size(); ++t) {
        if (t > 0 && m[t] == m[t - 1]) continue;
        Multiset rest = m;
        rest.erase(rest.begin() + static_cast<long>(t));
        acc += paired(f.row(m[t]), F.row(B.index_of(rest)));
        ++count;
      }
      F.row(i) = acc / static_cast<double>(count);
    }
  // full comonoid-morphism constraint on pairs whose total size stays within d
  double worst = 0;
  for (int x = 0; x < B.size(); ++x)
    for (int y = 0; y < B.size(); ++y) {
      if (B.at(x).size() + B.at(y).size() > static_cast<size_t>(d)) continue;
      Eigen::RowVectorXcd lhs = F.row(B.index_of(multiset_union(B.at(x), B.at(y))));
      worst = std::max(worst, (lhs - paired(F.row(x), F.row(y))).cwiseAbs().maxCoeff());
    }
  if (worst > tol * std::max(1.0, max_abs(F))) throw LiftFailure(worst);
  return F;
}

Mat lift_sharp(const Monoid& m, const Mat& g, int d, double tol) {
  return lift_flat({m.m.adjoint(), m.u.adjoint()}, g.adjoint(), d, tol).adjoint();
}

MonoidalMaps monoidal_structure(int na, int nb, int d, double tol) {
  MultisetBasis A(na, d), B(nb, d);
  const int NA = A.size(), NB = B.size();
  ExpStructure xa = build_exp(na, d), xb = build_exp(nb, d);
  SpMat DA = sparse(xa.Delta), DB = sparse(xb.Delta);
  SpMat prod = sparse_kron(DA, DB);  // rows (x1, x2, y1, y2)
  std::vector<Eigen::Triplet<cd>> t;
  for (int col = 0; col < prod.outerSize(); ++col)
    for (SpMat::InnerIterator it(prod, col); it; ++it) {
      long r = it.row();
      long y2 = r % NB, y1 = (r / NB) % NB, x2 = (r / NB / NB) % NA, x1 = r / NB / NB / NA;
      long to = ((x1 * NB + y1) * NA + x2) * NB + y2;
      t.emplace_back(to, col, it.value());
    }
  SpMat dc(static_cast<long>(NA) * NB * NA * NB, static_cast<long>(NA) * NB);
  dc.setFromTriplets(t.begin(), t.end());
  Comonoid c{Mat(dc), kron(xa.e, xb.e)};
  Mat f = kron(xa.eps, xb.eps);
  MonoidalMaps r;
  r.m_tensor = lift_flat(c, f, d, tol);
  r.nu_tensor = r.m_tensor.adjoint();
  r.m_top = lift_flat({Mat::Ones(1, 1), Mat::Ones(1, 1)}, Mat::Ones(1, 1), d, tol);
  return r;
}

namespace {

using Coeffs = std::map<Multiset, cd>;

// all ways to write m as an unordered family of nonempty multisets
std::set<std::vector<Multiset>> partitions(const Multiset& m) {
  std::set<std::vector<Multiset>> out;
  std::vector<Multiset> parts;
  std::function<void(size_t)> go = [&](size_t i) {
    if (i == m.size()) {
      auto p = parts;
      std::sort(p.begin(), p.end());
      out.insert(p);
      return;
    }
    for (size_t j = 0; j < parts.size(); ++j) {
      parts[j].push_back(m[i]);
      std::sort(parts[j].begin(), parts[j].end());
      go(i + 1);
      parts[j].erase(std::find(parts[j].begin(), parts[j].end(), m[i]));
    }
    parts.push_back({m[i]});
    go(i + 1);
    parts.pop_back();
  };
  go(0);
  return out;
}

} // namespace

double comonad_associativity_residual(const ExpStructure& x) {
  const MultisetBasis& A = x.basis;
  const MultisetBasis& AA = x.basis2;
  const int d = x.d;
  // support of digging on each element of !A
  std::vector<std::vector<int>> dig(A.size());
  for (int j = 0; j < AA.size(); ++j)
    for (int i = 0; i < A.size(); ++i)
      if (x.delta(j, i) != cd(0)) dig[i].push_back(j);
  auto inner_total = [&](const Multiset& q) {
    size_t s = 0;
    for (int e : q) s += AA.at(e).size();
    return s;
  };
  double worst = 0;
  for (int m = 0; m < A.size(); ++m) {
    Coeffs lhs, rhs;
    for (int M : dig[m]) {
      const Multiset& ps = AA.at(M);  // elements of !A
      // digging then the functor applied to digging
      std::vector<int> pick(ps.size(), 0);
      double om = orderings(ps);
      std::function<void(size_t)> go = [&](size_t i) {
        if (i == ps.size()) {
          Multiset q = pick;
          std::sort(q.begin(), q.end());
          if (inner_total(q) <= static_cast<size_t>(d)) lhs[q] += om / orderings(q);
          return;
        }
        for (int c : dig[ps[i]]) {
          pick[i] = c;
          go(i + 1);
        }
      };
      go(0);
      // digging twice: split M into parts, pad with empty parts
      for (const auto& parts : partitions(ps)) {
        if (parts.size() > static_cast<size_t>(d)) continue;
        for (size_t empties = 0; parts.size() + empties <= static_cast<size_t>(d); ++empties) {
          Multiset q;
          bool ok = true;
          for (const auto& p : parts) {
            int idx = AA.index_of(p);
            if (idx < 0) ok = false;
            q.push_back(idx);
          }
          for (size_t e = 0; e < empties; ++e) q.push_back(AA.index_of({}));
          if (!ok) continue;
          std::sort(q.begin(), q.end());
          if (inner_total(q) <= static_cast<size_t>(d)) rhs[q] += 1.0;
        }
      }
    }
    std::set<Multiset> keys;
    for (const auto& [k, v] : lhs) keys.insert(k);
    for (const auto& [k, v] : rhs) keys.insert(k);
    for (const auto& k : keys) worst = std::max(worst, std::abs(lhs[k] - rhs[k]));
  }
  return worst;
}

} // namespace ldc
