#include <doctest.h>

#include <random>
#include <set>

#include "ldc/constructions.hpp"
#include "ldc/fixtures.hpp"
#include "ldc/suites.hpp"

using namespace ldc;
using O = ObjectExpr;

namespace {

constexpr double kTol = 1e-9;

Mat random_matrix(std::mt19937& rng, int r, int c) {
  std::normal_distribution<double> n;
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = cd(n(rng), n(rng));
  return m;
}

Mat oblique_projector(std::mt19937& rng, int n, int k) {
  Mat t = random_matrix(rng, n, n);
  Mat d = Mat::Zero(n, n);
  for (int i = 0; i < k; ++i) d(i, i) = 1.0;
  return t * d * t.inverse();
}

Gadget with_roles(Gadget g, std::initializer_list<std::pair<const char*, Mat>> roles) {
  for (const auto& [k, v] : roles) g.morphisms[k] = v;
  return g;
}

// Weil algebra times C: basis 1, x, f with f the unit of the second factor
Gadget weil_times_c() {
  Mat m = Mat::Zero(3, 9);
  m(0, 0) = 1.0;
  m(1, 1) = m(1, 3) = 1.0;
  m(2, 8) = 1.0;
  Mat u(3, 1);
  u << 1.0, 0.0, 1.0;
  return monoid_gadget("linear-monoid", {"1", "x", "f"}, m, u);
}

bool exponential_suite(const std::string& name) {
  return name.find("bang") != std::string::npos;
}

Gadget terminal_gadget(const EquationSuite& s) {
  Gadget g;
  std::set<std::string> objs;
  for (const auto& [role, sig] : s.sigs) {
    for (const auto& o : sig.dom) objs.insert(o);
    for (const auto& o : sig.cod) objs.insert(o);
    g.morphisms[role] = Mat::Ones(1, 1);
  }
  for (const auto& o : objs) g.objects[o] = O::top();
  return g;
}

} // namespace

TEST_CASE("registry lookup") {
  CHECK(find_suite("DAGGER_LINEAR_MONOID").name == "dagger-linear-monoid");
  CHECK(find_suite("complementary").name == "complementary");
  CHECK_THROWS_AS(find_suite("no-such-suite"), std::invalid_argument);
  CHECK(suite_names().size() >= 30);
}

TEST_CASE("the terminal gadget satisfies every suite") {
  for (const auto& name : suite_names()) {
    if (exponential_suite(name)) continue;
    CAPTURE(name);
    SuiteReport r = check_suite(terminal_gadget(find_suite(name)), name, kTol);
    CHECK(r.pass);
  }
}

TEST_CASE("weil and quad4 are linear monoids but not Frobenius") {
  for (const char* name : {"weil", "quad4"}) {
    CAPTURE(name);
    Gadget g = resolve_gadget(name);
    CHECK(check_suite(g, "linear-monoid", kTol).pass);
    CHECK(check_suite(g, "dagger-linear-monoid", kTol).pass);
    CHECK(check_suite(g, "frobenius-coincidence", kTol).fails_strongly(kTol));
  }
  Gadget flip = resolve_gadget("quad4-flip");
  CHECK(check_suite(flip, "linear-monoid", kTol).pass);
  CHECK_FALSE(check_suite(flip, "dagger-linear-monoid", kTol).pass);
}

TEST_CASE("shipped gadget files match the built-in gadgets") {
  for (const auto& name : builtin_gadget_names()) {
    CAPTURE(name);
    Gadget file = load_gadget(std::string(LDC_FIXTURE_DIR) + "/gadgets/" + name + ".json");
    Gadget built = resolve_gadget(name);
    REQUIRE(file.morphisms.size() == built.morphisms.size());
    for (const auto& [role, m] : built.morphisms) CHECK(matrices_equal(file.morphism(role), m, 0.0).equal);
  }
}

TEST_CASE("qubit complementary system") {
  Gadget q = qubit_zx_gadget();
  for (const char* s : {"linear-monoid", "linear-comonoid", "linear-bialgebra", "complementary", "hopf",
                        "dagger-linear-monoid", "dagger-linear-comonoid", "frobenius-coincidence"}) {
    CAPTURE(s);
    SuiteReport r = check_suite(q, s, 1e-12);
    CHECK(r.pass);
    CHECK(r.worst() <= 1e-12);
  }
  CHECK(check_suite(cyclic_group_gadget(3), "complementary", kTol).pass);
}

TEST_CASE("missing roles and reports") {
  Gadget g = resolve_gadget("qubit-zx-no-comonoid");
  CHECK_THROWS_AS(check_suite(g, "complementary", kTol), MissingRole);
  SuiteReport r = check_suite(qubit_zx_gadget(), "linear-monoid", kTol);
  nlohmann::json j = r.to_json();
  CHECK(j["suite"] == "linear-monoid");
  CHECK(j["pass"] == true);
  REQUIRE(j["equations"].is_array());
  CHECK(j["equations"][0].contains("label"));
  CHECK(j["equations"][0].contains("residual"));
  CHECK_THROWS_AS(require_suite(weil_gadget(), "frobenius-coincidence", kTol), SuiteFailure);
}

TEST_CASE("gadget json round trip") {
  Gadget q = qubit_zx_gadget();
  Gadget back = gadget_from_json(gadget_to_json(q));
  CHECK(back.kind == q.kind);
  for (const auto& [role, m] : q.morphisms) CHECK(matrices_equal(back.morphism(role), m, 0.0).equal);
  CHECK(same_object(back.object("B"), q.object("B")));
  CHECK_THROWS_AS(gadget_from_json(nlohmann::json::parse(R"({"objects":{}})")), SchemaError);
  auto ej = gadget_to_json(exp_gadget(2, 2));
  CHECK(ej["bases"]["X"][3] == "[0,0]");
}

TEST_CASE("binary idempotent splitting") {
  Gadget g;
  g.env.add_atom("A", 2);
  g.env.add_atom("C", 3);
  g.objects["A"] = O::atom("A");
  g.objects["B"] = O::atom("C");
  g.morphisms["idem_u"] = Mat::Identity(2, 2);
  g.morphisms["idem_v"] = Mat::Identity(2, 2);
  BinarySplit id = split_binary_idempotent(g);
  CHECK(matrices_equal(id.alpha, Mat::Identity(2, 2), 1e-12).equal);
  CHECK(matrices_equal(id.beta, Mat::Identity(2, 2), 1e-12).equal);

  std::mt19937 rng(1);
  Mat u = random_matrix(rng, 3, 2);
  g.morphisms["idem_u"] = u;
  g.morphisms["idem_v"] = u.completeOrthogonalDecomposition().pseudoInverse();
  BinarySplit e = split_binary_idempotent(g);
  CHECK(e.alpha.rows() == 2);
  CHECK(e.alpha_beta <= 1e-8);
  CHECK(e.beta_alpha <= 1e-8);

  Mat a = random_matrix(rng, 3, 1), b = random_matrix(rng, 1, 3);
  g.objects["B"] = O::atom("A");
  g.env.atoms["A"].dim = 3;
  g.morphisms["idem_u"] = a * b;
  g.morphisms["idem_v"] = a * b / (b * a)(0, 0) / (b * a)(0, 0);
  BinarySplit r1 = split_binary_idempotent(g);
  CHECK(r1.alpha.rows() == 1);
  CHECK(r1.alpha_beta <= 1e-8);
}

TEST_CASE("weak preunitary from a dagger splitting") {
  Gadget g;
  g.env.add_atom("A", 2);
  g.objects["A"] = O::atom("A");
  g.morphisms["idem_u"] = Mat::Identity(2, 2);
  g.morphisms["idem_v"] = Mat::Identity(2, 2);
  PreunitaryResult id = weak_preunitary_from_dagger_split(g);
  CHECK(matrices_equal(id.alpha, Mat::Identity(2, 2), 0.0).equal);
  CHECK(id.report.pass);

  Mat h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  h /= std::sqrt(2.0);
  g.morphisms["idem_u"] = h;
  g.morphisms["idem_v"] = h.adjoint();
  PreunitaryResult hr = weak_preunitary_from_dagger_split(g);
  CHECK(hr.report.pass);
  CHECK(hr.report.worst() <= 1e-10);
  CHECK(matrices_equal(hr.alpha * hr.alpha.adjoint(), Mat::Identity(2, 2), 1e-10).equal);

  std::mt19937 rng(8);
  g.morphisms["idem_u"] = random_matrix(rng, 2, 2);
  g.morphisms["idem_v"] = random_matrix(rng, 2, 2);
  CHECK_THROWS_AS(weak_preunitary_from_dagger_split(g), SuiteFailure);
}

TEST_CASE("monoid actions") {
  Gadget a = monoid_to_actions(qubit_zx_gadget());
  CHECK(check_suite(a, "monoid-actions", kTol).pass);
  Gadget w = weil_gadget();
  Gadget back = actions_to_monoid(monoid_to_actions(w));
  for (const char* r : {"m", "u", "etaL", "epsL", "etaR", "epsR"})
    CHECK(matrices_equal(back.morphism(r), w.morphism(r), 1e-10).equal);
  Gadget t = monoid_to_actions(monoid_gadget("linear-monoid", {"*"}, Mat::Ones(1, 1), Mat::Ones(1, 1)));
  for (const char* r : {"lact", "ract", "lcoact", "rcoact"}) CHECK(matrices_equal(t.morphism(r), Mat::Ones(1, 1), 0.0).equal);
}

TEST_CASE("splitting linear monoids") {
  Gadget w = weil_gadget();
  Gadget same = split_linear_monoid(with_roles(w, {{"eA", Mat::Identity(2, 2)}, {"eB", Mat::Identity(2, 2)}}));
  for (const char* r : {"m", "u", "etaL", "epsL", "etaR", "epsR"})
    CHECK(matrices_equal(same.morphism(r), w.morphism(r), 1e-12).equal);

  Mat p = Mat::Zero(3, 3);
  p(0, 0) = p(1, 1) = 1.0;
  Gadget block = split_linear_monoid(with_roles(weil_times_c(), {{"eA", p}, {"eB", p}}));
  CHECK(check_suite(block, "linear-monoid", kTol).pass);
  CHECK(matrices_equal(block.morphism("m"), w.morphism("m"), 1e-12).equal);
  CHECK(matrices_equal(block.morphism("u"), w.morphism("u"), 1e-12).equal);

  std::mt19937 rng(12);
  Mat bad = oblique_projector(rng, 3, 2);
  CHECK_THROWS_AS(split_linear_monoid(with_roles(weil_times_c(), {{"eA", bad}, {"eB", bad.transpose()}})),
                  SuiteFailure);
}

TEST_CASE("splitting linear comonoids and bialgebras") {
  Gadget q = qubit_zx_gadget();
  Gadget qi = with_roles(q, {{"eA", Mat::Identity(2, 2)}, {"eB", Mat::Identity(2, 2)}});
  Gadget c = split_linear_comonoid(qi);
  Gadget b = split_linear_bialgebra(qi);
  for (const char* r : {"d", "k", "cetaL", "cepsL"}) CHECK(matrices_equal(c.morphism(r), q.morphism(r), 1e-12).equal);
  for (const char* r : {"m", "u", "d", "k"}) CHECK(matrices_equal(b.morphism(r), q.morphism(r), 1e-12).equal);

  std::mt19937 rng(13);
  Mat bad = oblique_projector(rng, 2, 1);
  Gadget qb = with_roles(q, {{"eA", bad}, {"eB", bad.transpose()}});
  CHECK_THROWS_AS(split_linear_comonoid(qb), SuiteFailure);
  CHECK_THROWS_AS(split_linear_bialgebra(qb), SuiteFailure);

  RetractResult rr = retract_idempotent(q, 3);
  Gadget rec = split_linear_bialgebra(rr.bang);
  CHECK(check_suite(rec, "linear-bialgebra", kTol).pass);
  CHECK(rec.morphism("u").rows() == 2);
}

TEST_CASE("compact reflection") {
  Gadget q = qubit_zx_gadget();
  Gadget c = compact_reflection(q);
  CHECK(c.kind == "linear-comonoid");
  CHECK(check_suite(c, "linear-comonoid", kTol).pass);
  Gadget w = weil_gadget();
  Gadget twice = compact_reflection(compact_reflection(w));
  for (const char* r : {"m", "u", "etaL", "epsL", "etaR", "epsR"})
    CHECK(matrices_equal(twice.morphism(r), w.morphism(r), 0.0).equal);
  CHECK(check_suite(compact_reflection(w), "dagger-linear-comonoid", kTol).pass);
}

TEST_CASE("antipodes") {
  Antipodes q = antipode(qubit_zx_gadget());
  CHECK(matrices_equal(q.s_tensor, Mat::Identity(2, 2), 1e-12).equal);
  CHECK(matrices_equal(q.s_par, Mat::Identity(2, 2), 1e-12).equal);
  CHECK(q.hopf.pass);
  CHECK(q.hopf.worst() <= 1e-12);

  Antipodes z3 = antipode(cyclic_group_gadget(3));
  Mat inv = Mat::Zero(3, 3);
  for (int a = 0; a < 3; ++a) inv((3 - a) % 3, a) = 1.0;
  CHECK(matrices_equal(z3.s_tensor, inv, 1e-12).equal);
  CHECK(matrices_equal(z3.s_par, inv, 1e-12).equal);

  Gadget broken = qubit_zx_gadget();
  broken.morphisms["u"] *= 2.0;
  CHECK_THROWS_AS(antipode(broken), SuiteFailure);
}

TEST_CASE("dagger of a dual") {
  Gadget d;
  d.env.add_atom("A", 2);
  d.objects["A"] = O::atom("A");
  d.morphisms["eta"] = canonical_cup(2);
  d.morphisms["eps"] = canonical_cap(2);
  Gadget dd = dagger_of_dual(d);
  CHECK(check_suite(dd, "dual", kTol).pass);
  CHECK(matrices_equal(dd.morphism("eta"), canonical_cup(2), 0.0).equal);
  Gadget twice = dagger_of_dual(dd);
  CHECK(matrices_equal(twice.morphism("eps"), d.morphism("eps"), 0.0).equal);

  Gadget t;
  t.objects["A"] = O::top();
  t.objects["B"] = O::bot();
  t.morphisms["eta"] = Mat::Ones(1, 1);
  t.morphisms["eps"] = Mat::Ones(1, 1);
  Gadget tt = dagger_of_dual(t);
  CHECK(check_suite(tt, "dual", kTol).pass);
  CHECK(tt.morphism("eta")(0, 0) == cd(1.0));
}

TEST_CASE("complementarity from a binary idempotent") {
  Gadget q = qubit_zx_gadget();
  ComplementaryVerdict id =
      complementary_from_idempotent(with_roles(q, {{"idem_u", Mat::Identity(2, 2)}, {"idem_v", Mat::Identity(2, 2)}}));
  CHECK(id.conditions.pass);
  CHECK(id.split_report.pass);

  std::mt19937 rng(14);
  Mat p = oblique_projector(rng, 2, 1);
  ComplementaryVerdict bad = complementary_from_idempotent(with_roles(q, {{"idem_u", p}, {"idem_v", p}}));
  CHECK_FALSE(bad.conditions.at("a").pass);
  CHECK_FALSE(bad.split_report.pass);

  RetractResult rr = retract_idempotent(q, 3);
  ComplementaryVerdict v = complementary_from_idempotent(rr.bang, rr.split);
  CHECK(v.conditions.pass);
  CHECK(v.split_report.pass);
}
