#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "corpus.hpp"
#include "ldc/constructions.hpp"
#include "ldc/fixtures.hpp"
#include "ldc/rewrite.hpp"
#include "ldc/validity.hpp"

using namespace ldc;
using O = ObjectExpr;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

Mat random_matrix(std::mt19937& rng, int r, int c) {
  std::normal_distribution<double> n;
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = cd(n(rng), n(rng));
  return m;
}

// Projector with the given image and a random complement.
Mat projector_onto(std::mt19937& rng, const Mat& image) {
  const int n = static_cast<int>(image.rows()), k = static_cast<int>(image.cols());
  Mat t(n, n);
  t << image, random_matrix(rng, n, n - k);
  Mat d = Mat::Zero(n, n);
  for (int i = 0; i < k; ++i) d(i, i) = 1.0;
  return t * d * t.inverse();
}

Mat random_projector(std::mt19937& rng, int n, int k) { return projector_onto(rng, random_matrix(rng, n, k)); }

std::vector<std::uint64_t> seeds(int n) {
  std::vector<std::uint64_t> s(n);
  std::iota(s.begin(), s.end(), 1);
  return s;
}

Gadget load_fixture_gadget(const std::string& name) {
  return load_gadget(std::string(LDC_FIXTURE_DIR) + "/gadgets/" + name + ".json");
}

// 1
void boxing_validity(Outcome& o) {
  for (const char* name : {"left-distributor", "reverse-distributor"}) {
    Circuit c = corpus_circuit(name);
    auto t0 = Clock::now();
    ValidityReport r = validate(c);
    double dt = seconds_since(t0);
    bool expect = std::string(name) == "left-distributor";
    o.require(r.valid == expect, std::string(name) + " verdict");
    if (!expect) o.require(r.stuck.has_value() && r.stuck->boxes.size() >= 2, "stuck state");
    o.require(dt < 0.1, std::string(name) + " runtime");
    o.detail << " " << name << "=" << (r.valid ? "valid" : "stuck") << " (" << dt * 1e3 << " ms)";
  }
  int units = 0, agree = 0;
  for (const auto& [name, expected] : corpus_expectations()) {
    Circuit c = corpus_circuit(name);
    bool all = validate_all_orders(c, seeds(20));
    bool ok = all && validate(c).valid == expected;
    for (std::uint64_t s : seeds(20)) ok = ok && validate(c, s).valid == expected;
    agree += ok;
    o.require(ok, name + " across seeds");
    units += name.find("top") != std::string::npos || name.find("bot") != std::string::npos;
  }
  o.require(corpus_expectations().size() >= 15 && units > 0, "corpus size");
  o.detail << "; " << agree << "/" << corpus_expectations().size() << " fixtures agree across 20 seeds (" << units
           << " unit/thinning)";
}

// 2
void rewrite_soundness(Outcome& o) {
  auto t0 = Clock::now();
  int expansions = 0;
  for (const auto& [name, expected] : corpus_expectations()) {
    Circuit c = corpus_circuit(name);
    Circuit cur = c;
    size_t prev = cur.nodes.size();
    int steps = 0;
    while (reduce_once(cur)) {
      o.require(cur.nodes.size() < prev, name + " node count decreases");
      prev = cur.nodes.size();
      o.require(++steps <= static_cast<int>(c.nodes.size()), name + " terminates");
      if (steps > static_cast<int>(c.nodes.size())) break;
    }
    Circuit n = normalize(c);
    o.require(isomorphic(n, cur), name + " normalize agrees with stepping");
    o.require(validate(n).valid == validate(c).valid, name + " validity preserved");
    for (const auto& w : n.wires) {
      auto k = w.type->kind();
      if (k != ObjectExpr::Kind::Tensor && k != ObjectExpr::Kind::Par) continue;
      ++expansions;
      o.require(isomorphic(normalize(expand_wire(n, w.id)), n), name + " expand " + w.id);
    }
  }
  double dt = seconds_since(t0);
  o.require(dt < 1.0, "runtime");
  o.detail << " " << corpus_expectations().size() << " circuits, " << expansions << " expansions round-trip, "
           << dt * 1e3 << " ms";
}

// 3
void model_kernel(Outcome& o) {
  double worst_snake = 0;
  for (int n = 1; n <= 4; ++n) {
    ModelEnv env;
    env.add_atom("A", n);
    env.generators["cup"] = canonical_cup(n);
    env.generators["cap"] = canonical_cap(n);
    Obj a = O::atom("A");
    for (int side = 0; side < 2; ++side) {
      CircuitBuilder b;
      auto x = b.input(side ? O::dagger(a) : a);
      auto cup = b.generator("cup", {}, {a, O::dagger(a)});
      if (side == 0) {
        b.generator("cap", {cup[1], x}, {});
        b.mark_output(cup[0]);
      } else {
        b.generator("cap", {x, cup[0]}, {});
        b.mark_output(cup[1]);
      }
      Mat m = evaluate(b.build(), env);
      worst_snake = std::max(worst_snake, matrices_equal(m, Mat::Identity(n, n), 0.0).residual);
    }
  }
  o.require(worst_snake <= 1e-12, "snake residual");
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> dim(1, 4);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    int a = dim(rng), b = dim(rng), c = dim(rng);
    ModelEnv env;
    env.add_atom("A", a);
    env.add_atom("B", b);
    env.add_atom("C", c);
    env.generators["f"] = random_matrix(rng, b, a);
    env.generators["g"] = random_matrix(rng, c, b);
    Circuit f = generator_circuit("f", {O::atom("A")}, {O::atom("B")});
    Circuit g = generator_circuit("g", {O::atom("B")}, {O::atom("C")});
    Mat lhs = evaluate(compose(f, g), env);
    Mat rhs = evaluate(g, env) * evaluate(f, env);
    worst = std::max(worst, matrices_equal(lhs, rhs, 0.0).residual);
  }
  o.require(worst <= 1e-10, "compositionality residual");
  o.detail << " snake worst " << worst_snake << ", composition worst " << worst << " over 100 pairs";
}

// 4
void idempotent_splitting(Outcome& o) {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> dim(1, 6);
  double worst_split = 0, worst_iso = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = dim(rng);
    const int k = std::uniform_int_distribution<int>(0, n)(rng);
    const int m = std::uniform_int_distribution<int>(k == 0 ? 1 : k, 6)(rng);
    Mat p = random_projector(rng, n, k);
    Splitting s = split_idempotent(p, 1e-9);
    o.require(s.r.rows() == k, "rank");
    worst_split = std::max(worst_split, matrices_equal(s.s * s.r, p, 0.0).residual);
    if (k > 0) worst_split = std::max(worst_split, matrices_equal(s.r * s.s, Mat::Identity(k, k), 0.0).residual);

    // binary idempotent u : A -> B, v : B -> A of rank k
    Mat t1 = random_matrix(rng, n, n), t2 = random_matrix(rng, m, m);
    Mat j = Mat::Zero(m, n);
    for (int i = 0; i < k; ++i) j(i, i) = 1.0;
    Gadget g;
    g.env.add_atom("A", n);
    g.env.add_atom("C", m);
    g.objects["A"] = O::atom("A");
    g.objects["B"] = O::atom("C");
    g.morphisms["idem_u"] = t2 * j * t1.inverse();
    g.morphisms["idem_v"] = t1 * j.transpose() * t2.inverse();
    BinarySplit b = split_binary_idempotent(g, 1e-9);
    o.require(b.alpha.rows() == k && b.alpha.cols() == k, "iso shape");
    worst_iso = std::max({worst_iso, b.alpha_beta, b.beta_alpha});
  }
  o.require(worst_split <= 1e-8, "SR = E and RS = I");
  o.require(worst_iso <= 1e-8, "alpha beta = 1 and beta alpha = 1");
  o.detail << " 100 projectors, split worst " << worst_split << ", iso worst " << worst_iso;
}

// 5
void counterexamples(Outcome& o) {
  const double tol = 1e-9;
  auto t0 = Clock::now();
  for (const char* name : {"weil", "quad4"}) {
    Gadget g = load_fixture_gadget(name);
    SuiteReport lm = check_suite(g, "LINEAR_MONOID", tol);
    SuiteReport dlm = check_suite(g, "DAGGER_LINEAR_MONOID", tol);
    SuiteReport fc = check_suite(g, "FROBENIUS_COINCIDENCE", tol);
    o.require(lm.pass && lm.worst() <= tol, std::string(name) + " linear monoid");
    o.require(dlm.pass && dlm.worst() <= tol, std::string(name) + " dagger linear monoid");
    o.require(!fc.pass && fc.fails_strongly(tol), std::string(name) + " not Frobenius");
    o.detail << " " << name << ": LM " << lm.worst() << ", DLM " << dlm.worst() << ", FC worst " << fc.worst() << ";";
  }
  Gadget flip = load_fixture_gadget("quad4-flip");
  SuiteReport lm = check_suite(flip, "LINEAR_MONOID", tol);
  SuiteReport dlm = check_suite(flip, "DAGGER_LINEAR_MONOID", tol);
  o.require(lm.pass, "quad4-flip linear monoid");
  o.require(!dlm.pass, "quad4-flip not dagger");
  double dt = seconds_since(t0);
  o.require(dt < 1.0, "runtime");
  o.detail << " quad4-flip: LM " << lm.worst() << ", DLM worst " << dlm.worst() << "; " << dt * 1e3 << " ms";
}

// 6
void complementarity(Outcome& o) {
  Gadget q = load_fixture_gadget("qubit-zx");
  SuiteReport comp = check_suite(q, "complementary", 1e-12);
  SuiteReport hopf = check_suite(q, "hopf", 1e-12);
  double comp_worst = 0;
  for (const char* l : {"comp.1", "comp.2", "comp.3"}) comp_worst = std::max(comp_worst, comp.at(l).residual);
  o.require(comp.pass && comp_worst <= 1e-12, "comp.1-3");
  o.require(hopf.pass && hopf.worst() <= 1e-12, "Hopf laws");
  std::mt19937 rng(99);
  int caught = 0;
  for (const auto& [role, m] : q.morphisms) {
    Gadget p = q;
    Mat delta = random_matrix(rng, static_cast<int>(m.rows()), static_cast<int>(m.cols()));
    p.morphisms[role] = m + 1e-3 * delta / delta.cwiseAbs().maxCoeff();
    bool detected = !check_suite(p, "complementary", 1e-9).pass || !check_suite(p, "hopf", 1e-9).pass;
    o.require(detected, "perturbation of " + role);
    caught += detected;
  }
  o.detail << " comp worst " << comp_worst << ", Hopf worst " << hopf.worst() << ", perturbations detected " << caught
           << "/" << q.morphisms.size();
}

// 7
void exponential_laws(Outcome& o) {
  auto t0 = Clock::now();
  Gadget g = exp_gadget(2, 3);
  o.require(dim_of(g.object("X"), g.env) == 10 && dim_of(g.object("XX"), g.env) == 286, "dimensions");
  SuiteReport co = check_suite(g, "bang-comonoid", 0.0);
  o.require(co.pass && co.worst() == 0.0, "comonoid laws exact");
  const Mat& delta = g.morphism("Delta");
  bool integer = true;
  for (int i = 0; i < delta.rows(); ++i)
    for (int j = 0; j < delta.cols(); ++j) integer = integer && delta(i, j) == cd(std::round(delta(i, j).real()));
  o.require(integer, "integer comultiplication");
  SuiteReport cm = check_suite(g, "bang-comonad", 1e-9);
  SuiteReport dc = check_suite(g, "dagger-bang-coherence", 1e-9);
  o.require(cm.pass && cm.worst() <= 1e-9, "comonad");
  o.require(dc.pass && dc.worst() <= 1e-9, "dagger coherence");
  std::mt19937 rng(5);
  double worst = 0;
  for (int t = 0; t < 50; ++t) {
    int a = 1 + t % 3, b = 1 + (t / 3) % 3, c = 2;
    Mat f = random_matrix(rng, b, a), h = random_matrix(rng, c, b);
    worst = std::max(worst, matrices_equal(bang_functor(h * f, 3), bang_functor(h, 3) * bang_functor(f, 3), 0.0).residual);
  }
  o.require(worst <= 1e-10, "functoriality");
  double dt = seconds_since(t0);
  o.require(dt < 30.0, "runtime");
  o.detail << " comonad " << cm.worst() << ", coherence " << dc.worst() << ", functoriality " << worst << ", " << dt
           << " s";
}

// 8
void pipeline(Outcome& o) {
  auto t0 = Clock::now();
  Gadget q = load_fixture_gadget("qubit-zx");
  RetractResult rr = retract_idempotent(q, 3, 1e-9);
  o.require(rr.retraction == 0.0, "flat;eps = 1 exactly");
  o.require(rr.idempotent == 0.0, "e idempotent exactly");
  SuiteReport cond = check_suite(rr.bang, "complementary-idempotent-cond", 1e-8);
  double cw = 0;
  for (const char* l : {"a", "a-op", "b", "b-op", "c", "c-op"}) cw = std::max(cw, cond.at(l).residual);
  o.require(cond.pass && cw <= 1e-8, "sectional conditions");
  ComplementaryVerdict v = complementary_from_idempotent(rr.bang, rr.split, 1e-9);
  o.require(v.split_report.pass, "split is complementary");
  double worst = 0;
  for (const auto& [role, m] : q.morphisms) worst = std::max(worst, matrices_equal(v.split.morphism(role), m, 0.0).residual);
  o.require(worst <= 1e-8, "recovered structure maps");
  double dt = seconds_since(t0);
  o.require(dt < 60.0, "runtime");
  o.detail << " retraction " << rr.retraction << ", idempotent " << rr.idempotent << ", conditions " << cw
           << ", recovery " << worst << ", " << dt << " s";
}

// 9
struct SectionCase {
  std::string name;
  std::function<Gadget(std::mt19937&, bool)> make;
  std::function<SectionCheck(const Gadget&, double)> check;
};

Mat diagonal_algebra(int n) {
  Mat m = Mat::Zero(n, n * n);
  for (int i = 0; i < n; ++i) m(i, i * n + i) = 1.0;
  return m;
}

Mat copy_map(int n) {
  Mat d = Mat::Zero(n * n, n);
  for (int i = 0; i < n; ++i) d(i * n + i, i) = 1.0;
  return d;
}

void section_suite(Outcome& o) {
  std::vector<SectionCase> cases = {
      {"dual",
       [](std::mt19937& rng, bool good) {
         const int n = 3;
         Gadget g;
         g.env.add_atom("A", n);
         g.objects["A"] = O::atom("A");
         g.morphisms["eta"] = canonical_cup(n);
         g.morphisms["eps"] = canonical_cap(n);
         Mat p = random_projector(rng, n, 2);
         g.morphisms["eA"] = p;
         g.morphisms["eB"] = good ? Mat(p.transpose()) : random_projector(rng, n, 2);
         return g;
       },
       dual_section_check},
      {"monoid",
       [](std::mt19937& rng, bool good) {
         // pointwise algebra on C^4; functions constant on {0,1} and {2,3} form a unital subalgebra
         const int n = 4;
         Mat image = Mat::Zero(n, 2);
         image(0, 0) = image(1, 0) = image(2, 1) = image(3, 1) = 1.0;
         Gadget g = monoid_gadget("linear-monoid", {"0", "1", "2", "3"}, diagonal_algebra(n), Mat::Ones(n, 1));
         g.morphisms["eA"] = good ? projector_onto(rng, image) : random_projector(rng, n, 2);
         return g;
       },
       monoid_section_check},
      {"comonoid",
       [](std::mt19937& rng, bool good) {
         // copy comonoid on C^4; coordinate subspaces are subcomonoids
         const int n = 4;
         Mat image = Mat::Zero(n, 2);
         image(1, 0) = image(3, 1) = 1.0;
         Gadget g;
         g.env.add_atom("A", n);
         g.objects["A"] = O::atom("A");
         g.morphisms["d"] = copy_map(n);
         g.morphisms["k"] = Mat::Ones(1, n);
         g.morphisms["eA"] = good ? projector_onto(rng, image) : random_projector(rng, n, 2);
         return g;
       },
       comonoid_section_check},
      {"bialgebra",
       [](std::mt19937& rng, bool good) {
         // group algebra of Z_4 with copy; the subgroup {0, 2} spans a sub-bialgebra
         Gadget g = cyclic_group_gadget(4);
         Mat image = Mat::Zero(4, 2);
         image(0, 0) = image(2, 1) = 1.0;
         g.morphisms["eA"] = good ? projector_onto(rng, image) : random_projector(rng, 4, 2);
         return g;
       },
       bialgebra_section_check},
  };
  std::mt19937 rng(31);
  for (const auto& c : cases) {
    int pass_ok = 0, counter_ok = 0;
    const int trials = 5;
    for (int t = 0; t < trials; ++t) {
      SectionCheck good = c.check(c.make(rng, true), 1e-8);
      SectionCheck bad = c.check(c.make(rng, false), 1e-8);
      pass_ok += good.condition && good.morphism;
      counter_ok += !bad.condition && !bad.morphism;
      o.require(good.condition == good.morphism && bad.condition == bad.morphism, c.name + " iff");
    }
    o.require(pass_ok > 0 && counter_ok > 0, c.name + " instances");
    o.detail << " " << c.name << ": " << pass_ok << "/" << trials << " passing, " << counter_ok << "/" << trials
             << " counterexamples;";
  }
}

} // namespace

int main() {
  struct Criterion {
    const char* name;
    void (*run)(Outcome&);
  };
  const Criterion criteria[] = {
      {"boxing validity", boxing_validity},
      {"rewrite soundness", rewrite_soundness},
      {"model kernel", model_kernel},
      {"idempotent splitting", idempotent_splitting},
      {"counterexample reproduction", counterexamples},
      {"complementarity", complementarity},
      {"exponential laws", exponential_laws},
      {"retraction pipeline", pipeline},
      {"split sections", section_suite},
  };
  int failures = 0, index = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << ++index << ". " << c.name << ":" << o.detail.str() << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
