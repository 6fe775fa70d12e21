#include "ldc/constructions.hpp"

#include <cmath>

namespace ldc {

namespace {

double identity_residual(const Mat& m) {
  return matrices_equal(m, Mat::Identity(m.rows(), m.cols()), 0.0).residual;
}

bool passes(const Gadget& g, const std::string& suite, double tol) { return check_suite(g, suite, tol).pass; }

void require_any(const Gadget& g, const std::string& a, const std::string& b, double tol) {
  SuiteReport ra = check_suite(g, a, tol);
  if (ra.pass) return;
  SuiteReport rb = check_suite(g, b, tol);
  if (rb.pass) return;
  throw SuiteFailure(a, std::min(ra.worst(), rb.worst()));
}

// View of one dual of g as the eta/eps pair of a dual suite.
Gadget dual_view(const Gadget& g, const std::string& eta, const std::string& eps, bool swapped) {
  Gadget v;
  v.kind = "dual";
  v.env = g.env;
  Obj a = g.object("A"), b = g.object("B");
  v.objects["A"] = swapped ? b : a;
  v.objects["B"] = swapped ? a : b;
  v.morphisms["eta"] = g.morphism(eta);
  v.morphisms["eps"] = g.morphism(eps);
  if (g.has("eA")) v.morphisms[swapped ? "eB" : "eA"] = g.morphism("eA");
  if (g.has("eB")) v.morphisms[swapped ? "eA" : "eB"] = g.morphism("eB");
  return v;
}

void require_dual_condition(const Gadget& g, const std::string& eta, const std::string& eps, bool swapped,
                            double tol) {
  require_any(dual_view(g, eta, eps, swapped), "dual-sectional", "dual-retractional", tol);
}

Gadget split_frame(const Gadget& g, const SplitPair& sp, const std::string& kind) {
  Gadget out;
  out.kind = kind;
  out.env = g.env;
  const int k = static_cast<int>(sp.r.rows());
  const int k2 = static_cast<int>(sp.r2.rows());
  out.env.add_atom("E", k);
  out.objects["A"] = ObjectExpr::atom("E");
  if (k2 == k) {
    out.objects["B"] = ObjectExpr::dagger(out.objects["A"]);
  } else {
    out.env.add_atom("E2", k2);
    out.objects["B"] = ObjectExpr::atom("E2");
  }
  return out;
}

// eta : T -> X (x) Y and eps : Y (x) X -> T transported along the splittings
void transport_dual(const Gadget& g, Gadget& out, const std::string& eta, const std::string& eps, const SplitPair& sp,
                    bool swapped) {
  const Mat& r1 = swapped ? sp.r2 : sp.r;
  const Mat& r2 = swapped ? sp.r : sp.r2;
  const Mat& s1 = swapped ? sp.s2 : sp.s;
  const Mat& s2 = swapped ? sp.s : sp.s2;
  out.morphisms[eta] = kron(r1, r2) * g.morphism(eta);
  out.morphisms[eps] = g.morphism(eps) * kron(s2, s1);
}

bool monoid_morphism(const Mat& m_src, const Mat& u_src, const Mat& m_dst, const Mat& u_dst, const Mat& f,
                     double tol) {
  return matrices_equal(f * m_src, m_dst * kron(f, f), tol).equal && matrices_equal(f * u_src, u_dst, tol).equal;
}

bool comonoid_morphism(const Mat& d_src, const Mat& k_src, const Mat& d_dst, const Mat& k_dst, const Mat& f,
                       double tol) {
  return matrices_equal(d_dst * f, kron(f, f) * d_src, tol).equal && matrices_equal(k_dst * f, k_src, tol).equal;
}

SplitPair split_of(const Gadget& g, double tol) { return split_pair(g.morphism("eA"), g.morphism("eB"), tol); }

} // namespace

BinarySplit split_binary_idempotent(const Gadget& g, double tol) {
  const Mat& u = g.morphism("idem_u");
  const Mat& v = g.morphism("idem_v");
  BinarySplit out;
  out.a = split_idempotent(v * u, tol);
  out.b = split_idempotent(u * v, tol);
  out.alpha = out.b.r * u * out.a.s;
  out.beta = out.a.r * v * out.b.s;
  out.alpha_beta = identity_residual(out.beta * out.alpha);
  out.beta_alpha = identity_residual(out.alpha * out.beta);
  return out;
}

PreunitaryResult weak_preunitary_from_dagger_split(const Gadget& g, double tol) {
  require_suite(g, "dagger-binary", tol);
  const Mat& u = g.morphism("idem_u");
  const Mat& v = g.morphism("idem_v");
  Splitting sp = split_idempotent(v * u, tol);
  PreunitaryResult out;
  out.alpha = sp.s.adjoint() * u * sp.s;
  Gadget p;
  p.kind = "preunitary";
  p.env = g.env;
  p.env.add_atom("E", static_cast<int>(sp.r.rows()));
  p.objects["A"] = ObjectExpr::atom("E");
  p.objects["B"] = ObjectExpr::dagger(p.objects["A"]);
  p.morphisms["phi"] = out.alpha;
  out.report = check_suite(p, "preunitary", tol);
  return out;
}

Gadget monoid_to_actions(const Gadget& g, double tol) {
  require_suite(g, "linear-monoid", tol);
  Gadget out;
  out.kind = "monoid-actions";
  out.env = g.env;
  out.objects["A"] = g.object("A");
  out.objects["B"] = g.object("B");
  out.morphisms["m"] = g.morphism("m");
  out.morphisms["u"] = g.morphism("u");
  out.morphisms["dB"] = evaluate_definition(g, "linear-monoid", "deltaL");
  out.morphisms["kB"] = evaluate_definition(g, "linear-monoid", "counitL");
  for (const char* r : {"lact", "ract", "lcoact", "rcoact"})
    out.morphisms[r] = evaluate_definition(g, "linear-monoid", r);
  return out;
}

Gadget actions_to_monoid(const Gadget& g, double tol) {
  require_suite(g, "monoid-actions", tol);
  Gadget out;
  out.kind = "linear-monoid";
  out.env = g.env;
  out.objects["A"] = g.object("A");
  out.objects["B"] = g.object("B");
  const Mat& u = g.morphism("u");
  const Mat& kb = g.morphism("kB");
  out.morphisms["m"] = g.morphism("m");
  out.morphisms["u"] = u;
  out.morphisms["etaL"] = g.morphism("rcoact") * u;
  out.morphisms["etaR"] = g.morphism("lcoact") * u;
  out.morphisms["epsL"] = kb * g.morphism("ract");
  out.morphisms["epsR"] = kb * g.morphism("lact");
  return out;
}

SplitPair split_pair(const Mat& eA, const Mat& eB, double tol) {
  Splitting a = split_idempotent(eA, tol);
  Splitting b = split_idempotent(eB, tol);
  return {a.r, a.s, b.r, b.s};
}

Gadget transport_monoid(const Gadget& g, const SplitPair& sp) {
  Gadget out = split_frame(g, sp, "linear-monoid");
  out.morphisms["m"] = sp.r * g.morphism("m") * kron(sp.s, sp.s);
  out.morphisms["u"] = sp.r * g.morphism("u");
  transport_dual(g, out, "etaL", "epsL", sp, false);
  transport_dual(g, out, "etaR", "epsR", sp, true);
  return out;
}

Gadget transport_comonoid(const Gadget& g, const SplitPair& sp) {
  Gadget out = split_frame(g, sp, "linear-comonoid");
  out.morphisms["d"] = kron(sp.r, sp.r) * g.morphism("d") * sp.s;
  out.morphisms["k"] = g.morphism("k") * sp.s;
  transport_dual(g, out, "cetaL", "cepsL", sp, false);
  transport_dual(g, out, "cetaR", "cepsR", sp, true);
  return out;
}

Gadget transport_bialgebra(const Gadget& g, const SplitPair& sp) {
  Gadget out = transport_monoid(g, sp);
  Gadget co = transport_comonoid(g, sp);
  for (auto& [k, v] : co.morphisms) out.morphisms[k] = v;
  out.kind = "linear-bialgebra";
  return out;
}

Gadget split_linear_monoid(const Gadget& g, double tol) {
  require_suite(g, "linear-monoid", tol);
  require_any(g, "monoid-sectional", "monoid-retractional", tol);
  require_dual_condition(g, "etaL", "epsL", false, tol);
  require_dual_condition(g, "etaR", "epsR", true, tol);
  return transport_monoid(g, split_of(g, tol));
}

Gadget split_linear_comonoid(const Gadget& g, double tol) {
  require_suite(g, "linear-comonoid", tol);
  require_any(g, "comonoid-sectional", "comonoid-retractional", tol);
  require_dual_condition(g, "cetaL", "cepsL", false, tol);
  require_dual_condition(g, "cetaR", "cepsR", true, tol);
  return transport_comonoid(g, split_of(g, tol));
}

Gadget split_linear_bialgebra(const Gadget& g, double tol) {
  require_suite(g, "linear-bialgebra", tol);
  require_any(g, "monoid-sectional", "monoid-retractional", tol);
  require_any(g, "comonoid-sectional", "comonoid-retractional", tol);
  require_dual_condition(g, "etaL", "epsL", false, tol);
  require_dual_condition(g, "etaR", "epsR", true, tol);
  return transport_bialgebra(g, split_of(g, tol));
}

Gadget compact_reflection(const Gadget& g, double tol) {
  // transposition swaps the two duals: (etaL, epsL) reflect to (cepsR, cetaR)
  static const std::vector<std::pair<std::string, std::string>> pairs = {
      {"m", "d"}, {"u", "k"}, {"epsR", "cetaL"}, {"etaR", "cepsL"}, {"epsL", "cetaR"}, {"etaL", "cepsR"}};
  Gadget out;
  out.env = g.env;
  out.objects["A"] = g.object("A");
  out.objects["B"] = g.object("B");
  if (g.has("m")) {
    require_suite(g, "linear-monoid", tol);
    out.kind = "linear-comonoid";
    for (const auto& [from, to] : pairs) out.morphisms[to] = g.morphism(from).transpose();
  } else {
    require_suite(g, "linear-comonoid", tol);
    out.kind = "linear-monoid";
    for (const auto& [to, from] : pairs) out.morphisms[to] = g.morphism(from).transpose();
  }
  return out;
}

Antipodes antipode(const Gadget& g, double tol) {
  require_suite(g, "complementary", tol);
  Antipodes out;
  out.s_tensor = evaluate_definition(g, "hopf", "sT");
  out.s_par = evaluate_definition(g, "hopf", "sP");
  out.hopf = check_suite(g, "hopf", tol);
  return out;
}

Gadget dagger_of_dual(const Gadget& g, double tol) {
  require_suite(g, "dual", tol);
  Gadget out;
  out.kind = "dual";
  out.env = g.env;
  out.objects["A"] = ObjectExpr::dagger(g.object("B"));
  out.objects["B"] = ObjectExpr::dagger(g.object("A"));
  out.morphisms["eta"] = g.morphism("eps").adjoint();
  out.morphisms["eps"] = g.morphism("eta").adjoint();
  return out;
}

ComplementaryVerdict complementary_from_idempotent(const Gadget& g, const SplitPair& sp, double tol) {
  ComplementaryVerdict out;
  out.conditions = check_suite(g, "complementary-idempotent-cond", tol);
  out.split = transport_bialgebra(g, sp);
  out.split.kind = "complementary";
  out.split.morphisms["alpha"] = sp.r2 * g.morphism("idem_u") * sp.s;
  out.split_report = check_suite(out.split, "complementary", tol);
  return out;
}

ComplementaryVerdict complementary_from_idempotent(const Gadget& g, double tol) {
  const Mat& u = g.morphism("idem_u");
  const Mat& v = g.morphism("idem_v");
  return complementary_from_idempotent(g, split_pair(v * u, u * v, tol), tol);
}

Gadget exp_gadget(int n, int d) {
  ExpStructure x = build_exp(n, d);
  Gadget g;
  g.kind = "exponential";
  g.env.add_atom("A", n);
  g.env.degree = d;
  Obj a = ObjectExpr::atom("A");
  g.objects["A"] = a;
  g.objects["X"] = ObjectExpr::bang(a);
  g.objects["Q"] = ObjectExpr::quest(a);
  g.objects["XX"] = ObjectExpr::bang(g.objects["X"]);
  g.objects["QQ"] = ObjectExpr::quest(g.objects["Q"]);
  g.morphisms["Delta"] = x.Delta;
  g.morphisms["e"] = x.e;
  g.morphisms["der"] = x.eps;
  g.morphisms["dig"] = x.delta;
  g.morphisms["nabla"] = x.nabla;
  g.morphisms["ue"] = x.unit_u;
  g.morphisms["coder"] = x.eta;
  g.morphisms["codig"] = x.mu;
  g.morphisms["s_iso"] = x.s_iso;
  g.morphisms["t_iso"] = x.t_iso;
  const int n2 = x.basis2.size();
  g.morphisms["s2_iso"] = Mat::Identity(n2, n2);
  g.morphisms["t2_iso"] = Mat::Identity(n2, n2);
  g.morphisms["bang_der"] = bang_functor(x.eps, d);
  // dereliction of !A itself: picks the singleton multisets of !!A
  const int n1 = x.basis.size();
  Mat der_x = Mat::Zero(n1, n2);
  for (int i = 0; i < n1; ++i) der_x(i, x.basis2.index_of({i})) = 1.0;
  g.morphisms["der_X"] = der_x;
  return g;
}

Gadget induce_bang_monoid(const Gadget& g, int d, double tol) {
  require_suite(g, "linear-monoid", tol);
  const int n = dim_of(g.object("A"), g.env);
  ExpStructure x = build_exp(n, d);
  MonoidalMaps mm = monoidal_structure(n, n, d, tol);
  const int nb = x.basis.size();
  Gadget out;
  out.kind = "linear-bialgebra";
  out.env = g.env;
  out.env.degree = d;
  out.objects["A"] = ObjectExpr::bang(g.object("A"));
  out.objects["B"] = ObjectExpr::quest(g.object("B"));
  out.morphisms["m"] = bang_functor(g.morphism("m"), d) * mm.m_tensor;
  out.morphisms["u"] = bang_functor(g.morphism("u"), d) * mm.m_top;
  Mat a = mm.nu_tensor * bang_functor(g.morphism("etaL"), d) * mm.m_top;
  Mat sw = swap_matrix(nb, nb);
  out.morphisms["etaL"] = a;
  out.morphisms["epsL"] = a.adjoint();
  out.morphisms["etaR"] = sw * a;
  out.morphisms["epsR"] = a.adjoint() * sw;
  out.morphisms["d"] = x.Delta;
  out.morphisms["k"] = x.e;
  for (const char* r : {"etaL", "epsL", "etaR", "epsR"}) out.morphisms[std::string("c") + r] = out.morphisms[r];
  return out;
}

RetractResult retract_idempotent(const Gadget& g, int d, double tol) {
  const int n = dim_of(g.object("A"), g.env);
  ExpStructure x = build_exp(n, d);
  RetractResult out;
  out.flat = lift_flat(Comonoid{g.morphism("d"), g.morphism("k")}, Mat::Identity(n, n), d, tol);
  out.eps = x.eps;
  out.retraction = identity_residual(out.eps * out.flat);
  Mat e = out.flat * out.eps;
  out.idempotent = matrices_equal(e * e, e, 0.0).residual;
  out.split = {out.eps, out.flat, out.flat.adjoint(), out.eps.adjoint()};
  out.bang = induce_bang_monoid(g, d, tol);
  out.bang.kind = "complementary";
  out.bang.morphisms["idem_u"] = out.eps.adjoint() * out.eps;
  out.bang.morphisms["idem_v"] = out.flat * out.flat.adjoint();
  out.bang.morphisms["eA"] = e;
  out.bang.morphisms["eB"] = e.adjoint();
  return out;
}

SectionCheck dual_section_check(const Gadget& g, double tol) {
  SectionCheck v;
  v.condition = passes(g, "dual-sectional", tol);
  SplitPair sp = split_of(g, tol);
  Gadget m;
  m.kind = "dual-morphism";
  m.env = g.env;
  m.env.add_atom("E", static_cast<int>(sp.r.rows()));
  m.env.add_atom("E2", static_cast<int>(sp.r2.rows()));
  m.objects["A"] = ObjectExpr::atom("E");
  m.objects["B"] = ObjectExpr::atom("E2");
  m.objects["A2"] = g.object("A");
  m.objects["B2"] = g.object("B");
  m.morphisms["eta"] = kron(sp.r, sp.r2) * g.morphism("eta");
  m.morphisms["eps"] = g.morphism("eps") * kron(sp.s2, sp.s);
  m.morphisms["eta2"] = g.morphism("eta");
  m.morphisms["eps2"] = g.morphism("eps");
  m.morphisms["f"] = sp.s;
  m.morphisms["g"] = sp.r2;
  v.morphism = passes(m, "dual-morphism", tol);
  return v;
}

SectionCheck monoid_section_check(const Gadget& g, double tol) {
  SectionCheck v;
  v.condition = passes(g, "monoid-sectional", tol);
  Splitting sp = split_idempotent(g.morphism("eA"), tol);
  const Mat& m = g.morphism("m");
  const Mat& u = g.morphism("u");
  Mat mE = sp.r * m * kron(sp.s, sp.s), uE = sp.r * u;
  v.morphism = monoid_morphism(mE, uE, m, u, sp.s, tol);
  return v;
}

SectionCheck comonoid_section_check(const Gadget& g, double tol) {
  SectionCheck v;
  v.condition = passes(g, "comonoid-sectional", tol);
  Splitting sp = split_idempotent(g.morphism("eA"), tol);
  const Mat& d = g.morphism("d");
  const Mat& k = g.morphism("k");
  Mat dE = kron(sp.r, sp.r) * d * sp.s, kE = k * sp.s;
  v.morphism = comonoid_morphism(dE, kE, d, k, sp.s, tol);
  return v;
}

SectionCheck bialgebra_section_check(const Gadget& g, double tol) {
  SectionCheck a = monoid_section_check(g, tol);
  SectionCheck b = comonoid_section_check(g, tol);
  return {a.condition && b.condition, a.morphism && b.morphism};
}

} // namespace ldc
