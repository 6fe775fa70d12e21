#include "ldc/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "ldc/multiset.hpp"

namespace ldc {

using K = ObjectExpr::Kind;

void ModelEnv::add_atom(const std::string& name, int dim) {
  AtomSpec s;
  s.dim = dim;
  for (int i = 0; i < dim; ++i) s.basis.push_back(std::to_string(i));
  atoms[name] = s;
}

Basis interp(const Obj& t, const ModelEnv& env) {
  Basis b;
  switch (t->kind()) {
  case K::Atom: {
    auto it = env.atoms.find(t->name());
    if (it == env.atoms.end()) throw UnboundAtom(t->name());
    b.dim = it->second.dim;
    b.labels = it->second.basis;
    if (static_cast<int>(b.labels.size()) != b.dim) {
      b.labels.clear();
      for (int i = 0; i < b.dim; ++i) b.labels.push_back(std::to_string(i));
    }
    b.degree.assign(b.dim, 0);
    return b;
  }
  case K::Top:
  case K::Bot:
    b.labels = {"*"};
    b.degree = {0};
    return b;
  case K::Tensor:
  case K::Par: {
    Basis l = interp(t->left(), env), r = interp(t->right(), env);
    b.dim = l.dim * r.dim;
    for (int i = 0; i < l.dim; ++i)
      for (int j = 0; j < r.dim; ++j) {
        b.labels.push_back(l.labels[i] + r.labels[j]);
        b.degree.push_back(l.degree[i] + r.degree[j]);
      }
    return b;
  }
  case K::Dagger: return interp(t->inner(), env);
  case K::Bang:
  case K::Quest: {
    Basis base = interp(t->inner(), env);
    MultisetBasis mb(base.dim, env.degree);
    b.dim = mb.size();
    for (int i = 0; i < mb.size(); ++i) {
      b.labels.push_back(mb.label(i, base.labels));
      b.degree.push_back(static_cast<int>(mb.at(i).size()));
    }
    return b;
  }
  }
  return b;
}

int dim_of(const Obj& t, const ModelEnv& env) {
  switch (t->kind()) {
  case K::Atom: {
    auto it = env.atoms.find(t->name());
    if (it == env.atoms.end()) throw UnboundAtom(t->name());
    return it->second.dim;
  }
  case K::Top:
  case K::Bot: return 1;
  case K::Tensor:
  case K::Par: return dim_of(t->left(), env) * dim_of(t->right(), env);
  case K::Dagger: return dim_of(t->inner(), env);
  case K::Bang:
  case K::Quest: {
    int n = dim_of(t->inner(), env);
    long long total = 0;
    for (int k = 0; k <= env.degree; ++k) total += binomial(n + k - 1, k);
    return static_cast<int>(total);
  }
  }
  return 1;
}

std::vector<Obj> leaves(const Obj& t) {
  switch (t->kind()) {
  case K::Top:
  case K::Bot: return {};
  case K::Tensor:
  case K::Par: {
    auto l = leaves(t->left());
    auto r = leaves(t->right());
    l.insert(l.end(), r.begin(), r.end());
    return l;
  }
  case K::Dagger: return leaves(t->inner());
  default: return {t};
  }
}

Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

Mat swap_matrix(int da, int db) {
  Mat s = Mat::Zero(da * db, da * db);
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b) s(b * da + a, a * db + b) = 1.0;
  return s;
}

namespace {

// Dense tensor with named legs; leg 0 is the most significant index.
struct Tensor {
  std::vector<int> legs;
  std::vector<int> dims;
  std::vector<cd> data;

  long long size() const {
    long long s = 1;
    for (int d : dims) s *= d;
    return s;
  }
};

Tensor permute(const Tensor& t, const std::vector<int>& order) {
  const size_t r = t.legs.size();
  std::vector<long long> stride(r, 1);
  for (size_t i = r; i-- > 1;) stride[i - 1] = stride[i] * t.dims[i];
  std::vector<size_t> pos(r);
  for (size_t i = 0; i < r; ++i) {
    auto it = std::find(t.legs.begin(), t.legs.end(), order[i]);
    pos[i] = static_cast<size_t>(it - t.legs.begin());
  }
  Tensor out;
  out.legs = order;
  for (size_t i = 0; i < r; ++i) out.dims.push_back(t.dims[pos[i]]);
  out.data.resize(t.data.size());
  std::vector<int> idx(r, 0);
  for (size_t k = 0; k < out.data.size(); ++k) {
    long long src = 0;
    for (size_t i = 0; i < r; ++i) src += idx[i] * stride[pos[i]];
    out.data[k] = t.data[static_cast<size_t>(src)];
    for (size_t i = r; i-- > 0;) {
      if (++idx[i] < out.dims[i]) break;
      idx[i] = 0;
    }
  }
  return out;
}

// Sum over repeated legs inside one tensor.
Tensor self_trace(const Tensor& t) {
  std::vector<int> seen, dup;
  for (int l : t.legs) {
    if (std::count(seen.begin(), seen.end(), l)) dup.push_back(l);
    else seen.push_back(l);
  }
  if (dup.empty()) return t;
  Tensor out;
  for (size_t i = 0; i < t.legs.size(); ++i)
    if (!std::count(dup.begin(), dup.end(), t.legs[i])) {
      out.legs.push_back(t.legs[i]);
      out.dims.push_back(t.dims[i]);
    }
  out.data.assign(static_cast<size_t>(out.size()), cd(0));
  std::vector<int> idx(t.legs.size(), 0);
  for (size_t k = 0; k < t.data.size(); ++k) {
    bool diag = true;
    std::map<int, int> val;
    for (size_t i = 0; i < t.legs.size() && diag; ++i) {
      if (!std::count(dup.begin(), dup.end(), t.legs[i])) continue;
      auto [it, fresh] = val.emplace(t.legs[i], idx[i]);
      if (!fresh && it->second != idx[i]) diag = false;
    }
    if (diag) {
      long long o = 0;
      size_t j = 0;
      for (size_t i = 0; i < t.legs.size(); ++i)
        if (!std::count(dup.begin(), dup.end(), t.legs[i])) o = o * out.dims[j++] + idx[i];
      out.data[static_cast<size_t>(o)] += t.data[k];
    }
    for (size_t i = t.legs.size(); i-- > 0;) {
      if (++idx[i] < t.dims[i]) break;
      idx[i] = 0;
    }
  }
  return out;
}

Tensor contract(const Tensor& a, const Tensor& b) {
  std::vector<int> shared, fa, fb;
  for (int l : a.legs) (std::count(b.legs.begin(), b.legs.end(), l) ? shared : fa).push_back(l);
  for (int l : b.legs)
    if (!std::count(shared.begin(), shared.end(), l)) fb.push_back(l);
  std::vector<int> oa = fa, ob = shared;
  oa.insert(oa.end(), shared.begin(), shared.end());
  ob.insert(ob.end(), fb.begin(), fb.end());
  Tensor pa = permute(a, oa), pb = permute(b, ob);
  long long m = 1, k = 1, n = 1;
  for (size_t i = 0; i < fa.size(); ++i) m *= pa.dims[i];
  for (size_t i = fa.size(); i < pa.dims.size(); ++i) k *= pa.dims[i];
  for (size_t i = shared.size(); i < pb.dims.size(); ++i) n *= pb.dims[i];
  using RM = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RM> ma(pa.data.data(), m, k), mb(pb.data.data(), k, n);
  Tensor out;
  out.legs = fa;
  out.legs.insert(out.legs.end(), fb.begin(), fb.end());
  out.dims.assign(pa.dims.begin(), pa.dims.begin() + static_cast<long>(fa.size()));
  out.dims.insert(out.dims.end(), pb.dims.begin() + static_cast<long>(shared.size()), pb.dims.end());
  out.data.resize(static_cast<size_t>(m * n));
  Eigen::Map<RM> mo(out.data.data(), m, n);
  mo.noalias() = ma * mb;
  return out;
}

Tensor contract_all(std::vector<Tensor> ts) {
  if (ts.empty()) return Tensor{{}, {}, {cd(1)}};
  while (ts.size() > 1) {
    size_t bi = 0, bj = 1;
    long long best = -1;
    bool best_shared = false;
    for (size_t i = 0; i < ts.size(); ++i)
      for (size_t j = i + 1; j < ts.size(); ++j) {
        long long out = 1;
        bool shared = false;
        for (size_t x = 0; x < ts[i].legs.size(); ++x) {
          if (std::count(ts[j].legs.begin(), ts[j].legs.end(), ts[i].legs[x])) shared = true;
          else out *= ts[i].dims[x];
        }
        for (size_t x = 0; x < ts[j].legs.size(); ++x)
          if (!std::count(ts[i].legs.begin(), ts[i].legs.end(), ts[j].legs[x])) out *= ts[j].dims[x];
        bool better = best < 0 || (shared && !best_shared) || (shared == best_shared && out < best);
        if (better) {
          best = out;
          best_shared = shared;
          bi = i;
          bj = j;
        }
      }
    Tensor t = contract(ts[bi], ts[bj]);
    ts.erase(ts.begin() + static_cast<long>(bj));
    ts[bi] = std::move(t);
  }
  return ts[0];
}

struct UnionFind {
  std::vector<int> p;
  int add() {
    p.push_back(static_cast<int>(p.size()));
    return p.back();
  }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

Tensor matrix_tensor(const Mat& m, std::vector<int> legs, std::vector<int> dims) {
  Tensor t{std::move(legs), std::move(dims), {}};
  t.data.resize(static_cast<size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) t.data[static_cast<size_t>(i * m.cols() + j)] = m(i, j);
  return t;
}

} // namespace

Mat evaluate(const Circuit& c, const ModelEnv& env) {
  UnionFind uf;
  std::vector<int> leaf_dim;
  std::unordered_map<std::string, std::vector<int>> wl;  // wire -> leaf ids
  for (const auto& w : c.wires) {
    std::vector<int> ids;
    for (const auto& l : leaves(w.type)) {
      ids.push_back(uf.add());
      leaf_dim.push_back(dim_of(l, env));
    }
    wl[w.id] = ids;
  }
  auto cat = [&](const std::vector<std::string>& ws) {
    std::vector<int> r;
    for (const auto& w : ws) r.insert(r.end(), wl.at(w).begin(), wl.at(w).end());
    return r;
  };
  auto unite_all = [&](const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw ShapeMismatch("structural node joins legs of different shape");
    for (size_t i = 0; i < a.size(); ++i) uf.unite(a[i], b[i]);
  };
  struct Pending {
    Mat m;
    std::vector<int> legs;
  };
  std::vector<Pending> boxes;
  for (const auto& n : c.nodes) {
    switch (n.kind) {
    case NodeKind::TensorIntro:
    case NodeKind::ParIntro:
    case NodeKind::TensorElim:
    case NodeKind::ParElim: unite_all(cat(n.inputs()), cat(n.outputs())); break;
    case NodeKind::Symmetry:
      unite_all(wl.at(n.ports[0]), wl.at(n.ports[3]));
      unite_all(wl.at(n.ports[1]), wl.at(n.ports[2]));
      break;
    case NodeKind::TopIntro:
    case NodeKind::TopElim:
    case NodeKind::BotIntro:
    case NodeKind::BotElim: break;
    case NodeKind::Generator:
    case NodeKind::DaggerBox: {
      auto ins = cat(n.inputs()), outs = cat(n.outputs());
      long long rows = 1, cols = 1;
      for (int l : outs) rows *= leaf_dim[l];
      for (int l : ins) cols *= leaf_dim[l];
      Mat m;
      if (n.kind == NodeKind::DaggerBox) {
        m = evaluate(*n.inner, env).adjoint();
      } else if (!n.name.empty() && n.name[0] == '$') {
        bool same = ins.size() == outs.size();
        for (size_t i = 0; same && i < ins.size(); ++i) same = leaf_dim[ins[i]] == leaf_dim[outs[i]];
        if (same) {
          unite_all(ins, outs);
          break;
        }
        if (rows != cols) throw ShapeMismatch("structural map " + n.name + " between different dimensions");
        m = Mat::Identity(rows, cols);
      } else {
        auto it = env.generators.find(n.name);
        if (it == env.generators.end()) throw UnassignedGenerator(n.name);
        m = it->second;
      }
      if (m.rows() != rows || m.cols() != cols)
        throw ShapeMismatch("generator " + n.name + " is " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", signature needs " + std::to_string(rows) + "x" +
                            std::to_string(cols));
      std::vector<int> legs = outs;
      legs.insert(legs.end(), ins.begin(), ins.end());
      boxes.push_back({std::move(m), std::move(legs)});
      break;
    }
    }
  }

  // boundary slots: outputs first, then inputs
  std::vector<int> slot_leaf = cat(c.outputs);
  size_t n_out_slots = slot_leaf.size();
  auto in_leaves = cat(c.inputs);
  slot_leaf.insert(slot_leaf.end(), in_leaves.begin(), in_leaves.end());
  const int slot_base = static_cast<int>(leaf_dim.size());

  // endpoints per class
  std::unordered_map<int, std::vector<std::pair<int, int>>> tensor_ends;  // class -> (box, leg pos)
  std::unordered_map<int, std::vector<int>> slot_ends;
  for (size_t b = 0; b < boxes.size(); ++b)
    for (size_t p = 0; p < boxes[b].legs.size(); ++p)
      tensor_ends[uf.find(boxes[b].legs[p])].push_back({static_cast<int>(b), static_cast<int>(p)});
  for (size_t s = 0; s < slot_leaf.size(); ++s) slot_ends[uf.find(slot_leaf[s])].push_back(static_cast<int>(s));

  std::vector<Tensor> ts;
  std::vector<std::vector<int>> new_legs(boxes.size());
  for (size_t b = 0; b < boxes.size(); ++b) new_legs[b] = boxes[b].legs;
  cd scalar = 1.0;
  std::vector<bool> done(leaf_dim.size(), false);
  for (int l = 0; l < static_cast<int>(leaf_dim.size()); ++l) {
    int cl = uf.find(l);
    if (done[cl]) continue;
    done[cl] = true;
    auto& te = tensor_ends[cl];
    auto& se = slot_ends[cl];
    if (te.size() + se.size() == 0) {
      scalar *= static_cast<double>(leaf_dim[l]);
    } else if (te.size() == 2 && se.empty()) {
      for (auto [b, p] : te) new_legs[b][p] = cl;
    } else if (te.size() == 1 && se.size() == 1) {
      new_legs[te[0].first][te[0].second] = slot_base + se[0];
    } else if (te.empty() && se.size() == 2) {
      int d = leaf_dim[l];
      ts.push_back(matrix_tensor(Mat::Identity(d, d), {slot_base + se[0], slot_base + se[1]}, {d, d}));
    } else {
      throw ShapeMismatch("leg class with " + std::to_string(te.size() + se.size()) + " endpoints");
    }
  }
  for (size_t b = 0; b < boxes.size(); ++b) {
    std::vector<int> dims;
    for (int l : boxes[b].legs) dims.push_back(leaf_dim[l]);
    ts.push_back(self_trace(matrix_tensor(boxes[b].m, new_legs[b], dims)));
  }
  Tensor t = contract_all(std::move(ts));
  std::vector<int> order;
  for (size_t s = 0; s < slot_leaf.size(); ++s) order.push_back(slot_base + static_cast<int>(s));
  t = permute(t, order);
  long long rows = 1, cols = 1;
  for (size_t s = 0; s < slot_leaf.size(); ++s) (s < n_out_slots ? rows : cols) *= leaf_dim[slot_leaf[s]];
  Mat m(rows, cols);
  for (long long i = 0; i < rows; ++i)
    for (long long j = 0; j < cols; ++j) m(i, j) = scalar * t.data[static_cast<size_t>(i * cols + j)];
  return m;
}

Comparison matrices_equal(const Mat& a, const Mat& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeMismatch("compare " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " with " +
                        std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  double res = a.size() ? (a - b).cwiseAbs().maxCoeff() : 0.0;
  double ma = a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
  double mb = b.size() ? b.cwiseAbs().maxCoeff() : 0.0;
  return {res <= tol * std::max({1.0, ma, mb}), res};
}

Splitting split_idempotent(const Mat& e, double tol) {
  if (e.rows() != e.cols()) throw ShapeMismatch("split_idempotent needs a square matrix");
  auto cmp = matrices_equal(e * e, e, tol);
  if (!cmp.equal) throw NotIdempotent(cmp.residual);
  const Eigen::Index n = e.rows();
  if (n == 0) return {Mat(0, 0), Mat(0, 0)};
  if (matrices_equal(e, Mat::Identity(n, n), tol).equal) return {Mat::Identity(n, n), Mat::Identity(n, n)};
  Eigen::JacobiSVD<Mat> svd(e, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;
  Eigen::Index k = 0;
  while (k < sv.size() && sv(k) > tol * std::max(1.0, smax)) ++k;
  Mat s = svd.matrixU().leftCols(k);
  Mat r = s.adjoint() * e;
  return {r, s};
}

nlohmann::json matrix_to_json(const Mat& m) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back({m(i, j).real(), m(i, j).imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Mat matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw SchemaError("matrix");
  auto rows = j["rows"].get<long>(), cols = j["cols"].get<long>();
  const auto& d = j["data"];
  if (rows < 0 || cols < 0 || !d.is_array() || static_cast<long>(d.size()) != rows * cols)
    throw SchemaError("matrix.data");
  Mat m(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long k = 0; k < cols; ++k) {
      const auto& e = d[static_cast<size_t>(i * cols + k)];
      if (e.is_number()) m(i, k) = e.get<double>();
      else if (e.is_array() && e.size() == 2) m(i, k) = cd(e[0].get<double>(), e[1].get<double>());
      else throw SchemaError("matrix.data");
      if (!std::isfinite(m(i, k).real()) || !std::isfinite(m(i, k).imag())) throw SchemaError("matrix.data");
    }
  return m;
}

} // namespace ldc
