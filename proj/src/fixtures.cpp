#include "ldc/fixtures.hpp"

#include <filesystem>

namespace ldc {

Mat canonical_cup(int n) {
  Mat c = Mat::Zero(n * n, 1);
  for (int i = 0; i < n; ++i) c(i * n + i, 0) = 1.0;
  return c;
}

Mat canonical_cap(int n) { return canonical_cup(n).transpose(); }

Gadget monoid_gadget(const std::string& kind, const std::vector<std::string>& basis, const Mat& m, const Mat& u) {
  const int n = static_cast<int>(basis.size());
  Gadget g;
  g.kind = kind;
  g.env.add_atom("A", n);
  g.env.atoms["A"].basis = basis;
  g.objects["A"] = ObjectExpr::atom("A");
  g.objects["B"] = ObjectExpr::dagger(g.objects["A"]);
  g.morphisms["m"] = m;
  g.morphisms["u"] = u;
  g.morphisms["etaL"] = canonical_cup(n);
  g.morphisms["epsL"] = canonical_cap(n);
  g.morphisms["etaR"] = canonical_cup(n);
  g.morphisms["epsR"] = canonical_cap(n);
  g.morphisms["alpha"] = Mat::Identity(n, n);
  return g;
}

namespace {

// structure constants: product of basis elements i, j
Mat mult_table(int n, const std::vector<std::tuple<int, int, int, cd>>& entries) {
  Mat m = Mat::Zero(n, n * n);
  for (const auto& [i, j, k, c] : entries) m(k, i * n + j) = c;
  return m;
}

Mat basis_vector(int n, int i) {
  Mat v = Mat::Zero(n, 1);
  v(i, 0) = 1.0;
  return v;
}

} // namespace

Gadget weil_gadget() {
  Mat m = mult_table(2, {{0, 0, 0, 1.0}, {0, 1, 1, 1.0}, {1, 0, 1, 1.0}});
  return monoid_gadget("linear-monoid", {"1", "x"}, m, basis_vector(2, 0));
}

Gadget quad4_gadget(bool flip) {
  const cd i(0, 1);
  // basis 1, x, y, z; products of generators not listed are zero
  std::vector<std::tuple<int, int, int, cd>> t = {{0, 0, 0, 1.0}};
  for (int a = 1; a < 4; ++a) {
    t.push_back({0, a, a, 1.0});
    t.push_back({a, 0, a, 1.0});
  }
  t.push_back({1, 2, 3, flip ? -i : i});
  t.push_back({2, 1, 3, -i});
  return monoid_gadget("linear-monoid", {"1", "x", "y", "z"}, mult_table(4, t), basis_vector(4, 0));
}

Gadget cyclic_group_gadget(int n) {
  std::vector<std::tuple<int, int, int, cd>> t;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t.push_back({a, b, (a + b) % n, 1.0});
  std::vector<std::string> basis;
  for (int a = 0; a < n; ++a) basis.push_back("g" + std::to_string(a));
  Gadget g = monoid_gadget("complementary", basis, mult_table(n, t), basis_vector(n, 0));
  Mat d = Mat::Zero(n * n, n);
  for (int a = 0; a < n; ++a) d(a * n + a, a) = 1.0;
  g.morphisms["d"] = d;
  g.morphisms["k"] = Mat::Ones(1, n);
  g.morphisms["cetaL"] = canonical_cup(n);
  g.morphisms["cepsL"] = canonical_cap(n);
  g.morphisms["cetaR"] = canonical_cup(n);
  g.morphisms["cepsR"] = canonical_cap(n);
  return g;
}

Gadget qubit_zx_gadget() {
  Gadget g = cyclic_group_gadget(2);
  g.env.atoms["A"].basis = {"0", "1"};
  return g;
}

std::vector<std::string> builtin_gadget_names() { return {"weil", "quad4", "quad4-flip", "qubit-zx"}; }

Gadget resolve_gadget(const std::string& name) {
  if (name == "weil") return weil_gadget();
  if (name == "quad4") return quad4_gadget(false);
  if (name == "quad4-flip") return quad4_gadget(true);
  if (name == "qubit-zx") return qubit_zx_gadget();
  if (!std::filesystem::exists(name)) {
    std::string shipped = std::string(LDC_FIXTURE_DIR) + "/gadgets/" + name + ".json";
    if (std::filesystem::exists(shipped)) return load_gadget(shipped);
  }
  return load_gadget(name);
}

} // namespace ldc
