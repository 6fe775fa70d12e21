#include "ldc/suites.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "ldc/exponential.hpp"

namespace ldc {

namespace {

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> r;
  std::stringstream ss(s);
  std::string w;
  while (std::getline(ss, w, ',')) {
    w.erase(std::remove_if(w.begin(), w.end(), ::isspace), w.end());
    if (!w.empty()) r.push_back(w);
  }
  return r;
}

Signature sig(const std::string& dom, const std::string& cod) { return {words(dom), words(cod)}; }

Equation eq(const std::string& label, const std::string& outs, const std::string& ins, const std::string& lhs,
            const std::string& rhs) {
  Equation e;
  e.label = label;
  e.outs = words(outs);
  e.ins = words(ins);
  e.lhs = lhs;
  e.rhs = rhs;
  return e;
}

class SuiteBuilder {
public:
  explicit SuiteBuilder(std::string name) { s_.name = std::move(name); }
  SuiteBuilder& role(const std::string& r, const std::string& dom, const std::string& cod) {
    s_.sigs[r] = sig(dom, cod);
    return *this;
  }
  SuiteBuilder& def(const std::string& text) {
    auto d = parse_definition(text);
    for (auto& x : s_.defs)
      if (x.name == d.name) return *this;
    s_.defs.push_back(d);
    return *this;
  }
  SuiteBuilder& add(Equation e) {
    s_.equations.push_back(std::move(e));
    return *this;
  }
  SuiteBuilder& add(const std::string& label, const std::string& outs, const std::string& ins,
                    const std::string& lhs, const std::string& rhs) {
    return add(eq(label, outs, ins, lhs, rhs));
  }
  // degree window on the most recent equation
  SuiteBuilder& window(int in_slack, int out_slack) {
    s_.equations.back().in_slack = in_slack;
    s_.equations.back().out_slack = out_slack;
    return *this;
  }
  // roles and definitions of another suite, without its equations
  SuiteBuilder& declarations(const EquationSuite& o) {
    for (const auto& [k, v] : o.sigs) s_.sigs[k] = v;
    for (const auto& d : o.defs) {
      bool dup = false;
      for (auto& x : s_.defs) dup = dup || x.name == d.name;
      if (!dup) s_.defs.push_back(d);
    }
    return *this;
  }
  SuiteBuilder& include(const EquationSuite& o) {
    declarations(o);
    for (const auto& e : o.equations) {
      Equation c = e;
      if (o.name != s_.name && c.label.find(':') == std::string::npos) c.label = o.name + ":" + c.label;
      s_.equations.push_back(std::move(c));
    }
    return *this;
  }
  // snake equations for a dual (cup: [] -> [X,Y], cap: [Y,X] -> [])
  SuiteBuilder& snakes(const std::string& tag, const std::string& cup, const std::string& cap) {
    add(tag + ".snake-left", "y", "x", cup + "[y,p] " + cap + "[;p,x]", "id[y;x]");
    add(tag + ".snake-right", "y", "x", cap + "[;x,p] " + cup + "[p,y]", "id[y;x]");
    return *this;
  }
  // right dagger dual: cup is the dagger of the cap and conversely
  SuiteBuilder& dagger_dual(const std::string& tag, const std::string& cup, const std::string& cap) {
    add(tag + ".dagger-cup", "p,q", "", cup + "[p,q]", cap + "^[p,q]");
    add(tag + ".dagger-cap", "", "p,q", cap + "[;p,q]", cup + "^[;p,q]");
    return *this;
  }
  EquationSuite build() const { return s_; }

private:
  EquationSuite s_;
};

EquationSuite dual_suite() {
  return SuiteBuilder("dual").role("eta", "", "A,B").role("eps", "B,A", "").snakes("dual", "eta", "eps").build();
}

SuiteBuilder& monoid_roles(SuiteBuilder& b) {
  return b.role("m", "A,A", "A")
      .role("u", "", "A")
      .role("etaL", "", "A,B")
      .role("epsL", "B,A", "")
      .role("etaR", "", "B,A")
      .role("epsR", "A,B", "")
      .def("deltaL[b1,b2;b] = epsL[b,a] m[a;a1,a2] etaL[a2,b1] etaL[a1,b2]")
      .def("deltaR[b1,b2;b] = epsR[a,b] m[a;a1,a2] etaR[b2,a1] etaR[b1,a2]")
      .def("counitL[;b] = epsL[b,a] u[a]")
      .def("counitR[;b] = epsR[a,b] u[a]")
      .def("lact[c;a,b] = etaR[c,x] m[y;x,a] epsR[y,b]")
      .def("ract[c;b,a] = etaL[x,c] m[y;a,x] epsL[b,y]")
      .def("lcoact[b,a2;a] = etaR[b,x] m[a2;x,a]")
      .def("rcoact[a2,b;a] = etaL[x,b] m[a2;a,x]");
}

SuiteBuilder& monoid_laws(SuiteBuilder& b) {
  return b.add("monoid.assoc", "y", "x1,x2,x3", "m[p;x1,x2] m[y;p,x3]", "m[q;x2,x3] m[y;x1,q]")
      .add("monoid.unit-left", "y", "x", "u[p] m[y;p,x]", "id[y;x]")
      .add("monoid.unit-right", "y", "x", "u[p] m[y;x,p]", "id[y;x]");
}

EquationSuite linear_monoid_suite() {
  SuiteBuilder b("linear-monoid");
  monoid_laws(monoid_roles(b));
  b.snakes("left-dual", "etaL", "epsL").snakes("right-dual", "etaR", "epsR");
  b.add("comultiplication", "b1,b2", "b", "deltaL[b1,b2;b]", "deltaR[b1,b2;b]");
  b.add("counit", "", "b", "counitL[;b]", "counitR[;b]");
  return b.build();
}

SuiteBuilder& comonoid_roles(SuiteBuilder& b) {
  return b.role("d", "A", "A,A")
      .role("k", "A", "")
      .role("cetaL", "", "A,B")
      .role("cepsL", "B,A", "")
      .role("cetaR", "", "B,A")
      .role("cepsR", "A,B", "")
      .def("mCL[b;bl,br] = cetaL[a,b] d[a1,a2;a] cepsL[br,a1] cepsL[bl,a2]")
      .def("mCR[b;bl,br] = cetaR[b,a] d[aL,aR;a] cepsR[aR,bl] cepsR[aL,br]")
      .def("uCL[b] = cetaL[a,b] k[;a]")
      .def("uCR[b] = cetaR[b,a] k[;a]");
}

SuiteBuilder& comonoid_laws(SuiteBuilder& b) {
  return b.add("comonoid.coassoc", "y1,y2,y3", "x", "d[p,y3;x] d[y1,y2;p]", "d[y1,q;x] d[y2,y3;q]")
      .add("comonoid.counit-left", "y", "x", "d[p,y;x] k[;p]", "id[y;x]")
      .add("comonoid.counit-right", "y", "x", "d[y,p;x] k[;p]", "id[y;x]");
}

EquationSuite linear_comonoid_suite() {
  SuiteBuilder b("linear-comonoid");
  comonoid_laws(comonoid_roles(b));
  b.snakes("left-dual", "cetaL", "cepsL").snakes("right-dual", "cetaR", "cepsR");
  b.add("multiplication", "b", "b1,b2", "mCL[b;b1,b2]", "mCR[b;b1,b2]");
  b.add("unit", "b", "", "uCL[b]", "uCR[b]");
  return b.build();
}

EquationSuite linear_bialgebra_suite() {
  SuiteBuilder b("linear-bialgebra");
  b.include(linear_monoid_suite()).include(linear_comonoid_suite());
  b.add("tensor.bialgebra", "y1,y2", "x1,x2", "m[p;x1,x2] d[y1,y2;p]",
        "d[a1,a2;x1] d[b1,b2;x2] m[y1;a1,b1] m[y2;a2,b2]");
  b.add("tensor.unit-copy", "y1,y2", "", "u[p] d[y1,y2;p]", "u[y1] u[y2]").window(-1, 0);
  b.add("tensor.counit-mult", "", "x1,x2", "m[p;x1,x2] k[;p]", "k[;x1] k[;x2]");
  b.add("tensor.unit-counit", "", "", "u[p] k[;p]", "");
  b.add("par.bialgebra", "c1,c2", "b1,b2", "mCL[p;b1,b2] deltaL[c1,c2;p]",
        "deltaL[a1,a2;b1] deltaL[e1,e2;b2] mCL[c1;a1,e1] mCL[c2;a2,e2]");
  b.add("par.unit-copy", "c1,c2", "", "uCL[p] deltaL[c1,c2;p]", "uCL[c1] uCL[c2]");
  b.add("par.counit-mult", "", "b1,b2", "mCL[p;b1,b2] counitL[;p]", "counitL[;b1] counitL[;b2]").window(0, -1);
  b.add("par.unit-counit", "", "", "uCL[p] counitL[;p]", "");
  return b.build();
}

EquationSuite complementary_suite() {
  SuiteBuilder b("complementary");
  b.include(linear_bialgebra_suite());
  b.role("alpha", "A", "B").role("alpha_inv", "B", "A");
  b.add("comp.1", "", "x", "uCR[c] lact[p;x,c] counitL[;p]", "k[;x]");
  b.add("comp.2", "a", "", "cetaL[a,b] counitL[;b]", "u[a]");
  b.add("comp.3", "b,a2", "", "uCR[c] lcoact[b,a2;c]", "uCR[b] uCR[a2]");
  b.add("comp.1-op", "", "x", "uCR[c] ract[p;c,x] counitL[;p]", "k[;x]");
  b.add("comp.2-op", "a", "", "cetaR[b,a] counitL[;b]", "u[a]");
  b.add("comp.3-op", "a2,b", "", "uCR[c] rcoact[a2,b;c]", "uCR[a2] uCR[b]");
  b.add("commutative", "y", "x1,x2", "m[y;x1,x2]", "m[y;x2,x1]");
  b.add("cocommutative", "y1,y2", "x", "d[y1,y2;x]", "d[y2,y1;x]");
  Equation a = eq("alpha.preunitary", "c", "a", "alpha[b;a] alpha_inv^[c;b]", "id[c;a]");
  a.optional = {"alpha"};
  b.add(a);
  return b.build();
}

EquationSuite hopf_suite() {
  SuiteBuilder b("hopf");
  b.declarations(complementary_suite());
  b.def("sT[a2;x] = uCR[p] d[a2,c;p] m[q;x,c] counitL[;q]");
  b.def("sP[a2;x] = u[p] deltaL[a2,c;p] mCR[q;x,c] k[;q]");
  b.add("tensor.hopf-left", "y", "x", "d[a1,a2;x] sT[b1;a1] m[y;b1,a2]", "k[;x] u[y]");
  b.add("tensor.hopf-right", "y", "x", "d[a1,a2;x] sT[b2;a2] m[y;a1,b2]", "k[;x] u[y]");
  b.add("par.hopf-left", "c", "b", "deltaL[p1,p2;b] sP[q1;p1] mCR[c;q1,p2]", "counitL[;b] uCR[c]");
  b.add("par.hopf-right", "c", "b", "deltaL[p1,p2;b] sP[q2;p2] mCR[c;p1,q2]", "counitL[;b] uCR[c]");
  return b.build();
}


std::map<std::string, EquationSuite> make_registry() {
  std::map<std::string, EquationSuite> r;
  auto put = [&](EquationSuite s) { r[s.name] = std::move(s); };

  put(dual_suite());

  put(SuiteBuilder("dual-morphism")
          .role("eta", "", "A,B")
          .role("eps", "B,A", "")
          .role("eta2", "", "A2,B2")
          .role("eps2", "B2,A2", "")
          .role("f", "A", "A2")
          .role("g", "B2", "B")
          .add("a", "a2,b", "", "eta2[a2,bb] g[b;bb]", "eta[a,b] f[a2;a]")
          .add("b", "", "bb,a", "g[b;bb] eps[b,a]", "f[a2;a] eps2[bb,a2]")
          .build());

  auto idem_dual = [](const std::string& name) {
    return SuiteBuilder(name).role("eta", "", "A,B").role("eps", "B,A", "").role("eA", "A", "A").role("eB", "B", "B");
  };
  put(idem_dual("dual-retractional")
          .add("a", "a,b", "", "eta[x,b] eA[a;x]", "eta[x,y] eA[a;x] eB[b;y]")
          .add("b", "", "b,a", "eB[y;b] eps[y,a]", "eB[y;b] eA[x;a] eps[y,x]")
          .build());
  put(idem_dual("dual-sectional")
          .add("c", "a,b", "", "eta[a,y] eB[b;y]", "eta[x,y] eA[a;x] eB[b;y]")
          .add("d", "", "b,a", "eA[x;a] eps[b,x]", "eB[y;b] eA[x;a] eps[y,x]")
          .build());

  put(SuiteBuilder("tensor-of-duals")
          .role("eta", "", "A,B")
          .role("eps", "B,A", "")
          .role("eta2", "", "C,D")
          .role("eps2", "D,C", "")
          .def("tdx[w,v] = eta[a,b] eta2[c,dd] tensor[w;a,c] par[v;dd,b]")
          .def("tdy[;v,w] = unpar[dd,b;v] untensor[a,c;w] eps[b,a] eps2[dd,c]")
          .def("pdx[w,v] = eta[a,b] eta2[c,dd] par[w;a,c] tensor[v;dd,b]")
          .def("pdy[;v,w] = untensor[dd,b;v] unpar[a,c;w] eps[b,a] eps2[dd,c]")
          .snakes("tensor", "tdx", "tdy")
          .snakes("par", "pdx", "pdy")
          .build());

  put(SuiteBuilder("dagger-dual").role("eta", "", "A,B").role("eps", "B,A", "").dagger_dual("dual", "eta", "eps").build());

  put(SuiteBuilder("dagger-of-dual")
          .role("eta", "", "A,B")
          .role("eps", "B,A", "")
          .add("snake-left", "y", "x", "eps^[y,p] eta^[;p,x]", "id[y;x]")
          .add("snake-right", "y", "x", "eta^[;x,p] eps^[p,y]", "id[y;x]")
          .build());

  put(SuiteBuilder("binary-idempotent")
          .role("idem_u", "A", "B")
          .role("idem_v", "B", "A")
          .add("uvu", "y", "x", "idem_u[p;x] idem_v[q;p] idem_u[y;q]", "idem_u[y;x]")
          .add("vuv", "y", "x", "idem_v[p;x] idem_u[q;p] idem_v[y;q]", "idem_v[y;x]")
          .build());

  put(SuiteBuilder("dagger-binary")
          .role("idem_u", "A", "B")
          .role("idem_v", "B", "A")
          .add("u", "y", "x", "idem_u[y;x]", "idem_u^[y;x]")
          .add("v", "y", "x", "idem_v^[y;x]", "idem_v[y;x]")
          .build());

  put(SuiteBuilder("coring")
          .role("eA", "A", "A")
          .role("$X", "X", "X")
          .def("kappaL[x2,a2;x,a] = $X[x2;x] eA[a2;a]")
          .def("kappaR[a2,x2;a,x] = eA[a2;a] $X[x2;x]")
          .def("mx[y;x] = $X[y;x]")
          .add("KL.1", "x2,a2", "x,a", "eA[p;a] mx[x1;x] mx[p1;p] kappaL[x2,a2;x1,p1]", "id[x2;x] eA[a2;a]")
          .add("KL.2", "x2,a2", "x,a", "eA[p;a] kappaL[x1,p1;x,p] mx[x2;x1] mx[a2;p1]", "id[x2;x] eA[a2;a]")
          .add("KR.1", "a2,x2", "a,x", "eA[p;a] mx[p1;p] mx[x1;x] kappaR[a2,x2;p1,x1]", "eA[a2;a] id[x2;x]")
          .add("KR.2", "a2,x2", "a,x", "eA[p;a] kappaR[p1,x1;p,x] mx[a2;p1] mx[x2;x1]", "eA[a2;a] id[x2;x]")
          .build());

  put(linear_monoid_suite());

  {
    SuiteBuilder b("monoid-actions");
    b.role("m", "A,A", "A")
        .role("u", "", "A")
        .role("dB", "B", "B,B")
        .role("kB", "B", "")
        .role("lact", "A,B", "B")
        .role("ract", "B,A", "B")
        .role("lcoact", "A", "B,A")
        .role("rcoact", "A", "A,B");
    monoid_laws(b);
    b.add("comonoid.coassoc", "y1,y2,y3", "x", "dB[p,y3;x] dB[y1,y2;p]", "dB[y1,q;x] dB[y2,y3;q]")
        .add("comonoid.counit-left", "y", "x", "dB[p,y;x] kB[;p]", "id[y;x]")
        .add("comonoid.counit-right", "y", "x", "dB[y,p;x] kB[;p]", "id[y;x]")
        .add("a", "y", "b", "u[x] lact[y;x,b]", "id[y;b]")
        .add("a-op", "y", "b", "u[x] ract[y;b,x]", "id[y;b]")
        .add("a-co", "y", "a", "lcoact[b,y;a] kB[;b]", "id[y;a]")
        .add("a-op-co", "y", "a", "rcoact[y,b;a] kB[;b]", "id[y;a]")
        .add("b", "y", "a1,a2,b", "m[p;a1,a2] lact[y;p,b]", "lact[q;a2,b] lact[y;a1,q]")
        .add("b-op", "y", "b,a1,a2", "m[p;a1,a2] ract[y;b,p]", "ract[q;b,a1] ract[y;q,a2]")
        .add("b-co", "b1,b2,y", "a", "lcoact[p,y;a] dB[b1,b2;p]", "lcoact[b1,q;a] lcoact[b2,y;q]")
        .add("b-op-co", "y,b1,b2", "a", "rcoact[y,p;a] dB[b1,b2;p]", "rcoact[q,b2;a] rcoact[y,b1;q]")
        .add("c", "y", "a1,b,a2", "ract[q;b,a2] lact[y;a1,q]", "lact[q;a1,b] ract[y;q,a2]")
        .add("d.1", "b,y", "a1,a2", "lcoact[b0,y;a2] lact[b;a1,b0]", "m[p;a1,a2] lcoact[b,y;p]")
        .add("d.2", "b,y", "a1,a2", "m[p;a1,a2] lcoact[b,y;p]", "lcoact[b,q;a1] m[y;q,a2]")
        .add("d-op.1", "y,b", "a1,a2", "rcoact[y,b0;a1] ract[b;b0,a2]", "m[p;a1,a2] rcoact[y,b;p]")
        .add("d-op.2", "y,b", "a1,a2", "m[p;a1,a2] rcoact[y,b;p]", "rcoact[q,b;a2] m[y;a1,q]");
    put(b.build());
  }

  {
    SuiteBuilder b("monoid-sectional");
    b.role("m", "A,A", "A").role("u", "", "A").role("eA", "A", "A");
    b.add("multiplication", "y", "x1,x2", "eA[p;x1] eA[q;x2] m[y;p,q]", "eA[p;x1] eA[q;x2] m[r;p,q] eA[y;r]");
    b.add("unit", "y", "", "u[y]", "u[p] eA[y;p]");
    put(b.build());
  }
  {
    SuiteBuilder b("monoid-retractional");
    b.role("m", "A,A", "A").role("u", "", "A").role("eA", "A", "A");
    b.add("multiplication", "y", "x1,x2", "m[r;x1,x2] eA[y;r]", "eA[p;x1] eA[q;x2] m[r;p,q] eA[y;r]");
    put(b.build());
  }

  {
    SuiteBuilder b("dagger-linear-monoid");
    b.include(linear_monoid_suite());
    b.dagger_dual("left-dual", "etaL", "epsL").dagger_dual("right-dual", "etaR", "epsR");
    b.add("comultiplication-dagger", "b1,b2", "b", "deltaL[b1,b2;b]", "m^[b1,b2;b]");
    b.add("counit-dagger", "", "b", "counitL[;b]", "u^[;b]");
    put(b.build());
  }

  {
    SuiteBuilder b("frobenius-coincidence");
    monoid_roles(b);
    b.role("alpha", "A", "B");
    b.add("cup", "b2", "a", "alpha[b2;a]", "etaL[a2,b2] m[p;a,a2] alpha[q;p] counitL[;q]");
    b.add("action", "b", "y,x", "m[p;y,x] alpha[b;p]", "alpha[q;y] ract[b;q,x]");
    b.add("cap-left", "", "a1,a2", "m[p;a1,a2] alpha[q;p] counitL[;q]", "alpha[q;a1] epsL[q,a2]");
    b.add("cap-right", "", "a1,a2", "m[p;a1,a2] alpha[q;p] counitL[;q]", "alpha[q;a2] epsR[a1,q]");
    put(b.build());
  }

  auto frobenius = [&](const std::string& name) {
    SuiteBuilder b(name);
    monoid_laws(monoid_roles(b));
    b.role("alpha", "A", "B").role("alpha_inv", "B", "A");
    b.def("fdelta[x1,x2;a] = alpha[b;a] deltaL[b1,b2;b] alpha_inv[x1;b1] alpha_inv[x2;b2]");
    b.def("fcounit[;a] = alpha[b;a] counitL[;b]");
    b.add("comonoid.coassoc", "y1,y2,y3", "x", "fdelta[p,y3;x] fdelta[y1,y2;p]", "fdelta[y1,q;x] fdelta[y2,y3;q]");
    b.add("comonoid.counit-left", "y", "x", "fdelta[p,y;x] fcounit[;p]", "id[y;x]");
    b.add("comonoid.counit-right", "y", "x", "fdelta[y,p;x] fcounit[;p]", "id[y;x]");
    b.add("frobenius-left", "p,q", "x,y", "fdelta[p,r;x] m[q;r,y]", "m[s;x,y] fdelta[p,q;s]");
    b.add("frobenius-right", "p,q", "x,y", "fdelta[r,q;y] m[p;x,r]", "m[s;x,y] fdelta[p,q;s]");
    return b;
  };
  put(frobenius("frobenius-algebra").build());
  {
    auto b = frobenius("dagger-frobenius");
    b.add("comultiplication-dagger", "x1,x2", "a", "fdelta[x1,x2;a]", "m^[x1,x2;a]");
    b.add("counit-dagger", "", "a", "fcounit[;a]", "u^[;a]");
    b.add("alpha-unitary", "c", "a", "alpha[b;a] alpha^[c;b]", "id[c;a]");
    put(b.build());
  }

  {
    SuiteBuilder b("frobenius-splitting-cond");
    monoid_roles(b);
    b.role("idem_u", "A", "B").role("idem_v", "B", "A");
    b.def("uv[y;x] = idem_u[p;x] idem_v[y;p]");
    b.def("vu[y;x] = idem_v[p;x] idem_u[y;p]");
    b.add("left", "b", "a", "idem_u[b;a]",
          "uv[p;a] uv[q;a2] m[r;p,q] idem_u[s;r] counitL[;s] vu[b;b2] etaL[a2,b2]");
    b.add("right", "b", "a", "idem_u[b;a]",
          "uv[p;a] uv[q;a2] m[r;q,p] idem_u[s;r] counitR[;s] vu[b;b2] etaR[b2,a2]");
    put(b.build());
  }

  put(linear_comonoid_suite());

  {
    SuiteBuilder b("comonoid-sectional");
    b.role("d", "A", "A,A").role("k", "A", "").role("eA", "A", "A");
    b.add("comultiplication", "y1,y2", "x", "eA[p;x] d[y1,y2;p]", "eA[p;x] d[q1,q2;p] eA[y1;q1] eA[y2;q2]").window(-1, 0);
    put(b.build());
  }
  {
    SuiteBuilder b("comonoid-retractional");
    b.role("d", "A", "A,A").role("k", "A", "").role("eA", "A", "A");
    b.add("comultiplication", "y1,y2", "x", "d[q1,q2;x] eA[y1;q1] eA[y2;q2]",
          "eA[p;x] d[q1,q2;p] eA[y1;q1] eA[y2;q2]")
        .window(-1, 0);
    b.add("counit", "", "x", "eA[p;x] k[;p]", "k[;x]");
    put(b.build());
  }

  {
    SuiteBuilder b("dagger-linear-comonoid");
    b.include(linear_comonoid_suite());
    b.dagger_dual("left-dual", "cetaL", "cepsL").dagger_dual("right-dual", "cetaR", "cepsR");
    b.add("multiplication-dagger", "b", "b1,b2", "mCL[b;b1,b2]", "d^[b;b1,b2]");
    b.add("unit-dagger", "b", "", "uCL[b]", "k^[b]");
    put(b.build());
  }

  put(linear_bialgebra_suite());
  put(complementary_suite());
  put(hopf_suite());

  {
    SuiteBuilder b("complementary-idempotent-cond");
    monoid_roles(comonoid_roles(b));
    b.role("idem_u", "A", "B").role("idem_v", "B", "A");
    b.def("uv[y;x] = idem_u[p;x] idem_v[y;p]");
    b.def("vu[y;x] = idem_v[p;x] idem_u[y;p]");
    b.add("a", "", "x", "uv[p;x] uCR[c] vu[q;c] lact[r;p,q] vu[s;r] counitL[;s]", "uv[p;x] k[;p]");
    b.add("a-op", "", "x", "uv[p;x] uCR[c] vu[q;c] ract[r;q,p] vu[s;r] counitL[;s]", "uv[p;x] k[;p]");
    b.add("b", "y", "", "uCR[c] idem_v[p;c] d[q1,q2;p] idem_u[r;q1] counitL[;r] uv[y;q2]", "u[p] uv[y;p]");
    b.add("b-op", "y", "", "uCR[c] idem_v[p;c] d[q2,q1;p] idem_u[r;q1] counitL[;r] uv[y;q2]", "u[p] uv[y;p]");
    b.add("c", "y1,y2", "", "uCR[c] idem_v[p;c] rcoact[q,r;p] idem_u[y1;q] vu[y2;r]",
          "uCR[c] idem_v[p;c] idem_u[y1;p] uCR[c2] idem_v[p2;c2] idem_u[y2;p2]");
    b.add("c-op", "y1,y2", "", "uCR[c] idem_v[p;c] lcoact[r,q;p] vu[y1;r] idem_u[y2;q]",
          "uCR[c] idem_v[p;c] idem_u[y1;p] uCR[c2] idem_v[p2;c2] idem_u[y2;p2]");
    put(b.build());
  }

  put(SuiteBuilder("preunitary")
          .role("phi", "A", "B")
          .role("phi_inv", "B", "A")
          .add("phi", "c", "a", "phi[b;a] phi_inv^[c;b]", "id[c;a]")
          .build());

  put(SuiteBuilder("dagger-bang-coherence")
          .role("Delta", "X", "X,X")
          .role("e", "X", "")
          .role("der", "X", "A")
          .role("dig", "X", "XX")
          .role("nabla", "Q,Q", "Q")
          .role("ue", "", "Q")
          .role("coder", "A", "Q")
          .role("codig", "QQ", "Q")
          .role("s_iso", "X", "Q")
          .role("t_iso", "X", "Q")
          .role("t_iso_inv", "Q", "X")
          .role("s2_iso", "XX", "QQ")
          .role("t2_iso", "XX", "QQ")
          .add("iota", "y", "x", "t_iso_inv^[y;x]", "s_iso[y;x]")
          .add("mul.a", "y1,y2", "x", "Delta[p1,p2;x] s_iso[y1;p1] s_iso[y2;p2]", "s_iso[q;x] nabla^[y1,y2;q]")
          .add("mul.b", "y", "x1,x2", "Delta^[q;x1,x2] t_iso[y;q]", "t_iso[p1;x1] t_iso[p2;x2] nabla[y;p1,p2]")
          .add("unit.a", "", "x", "e[;x]", "s_iso[q;x] ue^[;q]")
          .add("unit.b", "y", "", "e^[q] t_iso[y;q]", "ue[y]")
          .add("delta.a", "y", "x", "dig[p;x] s2_iso[y;p]", "s_iso[q;x] codig^[y;q]")
          .add("delta.b", "y", "x", "dig^[q;x] t_iso[y;q]", "t2_iso[p;x] codig[y;p]")
          .add("eta.a", "y", "x", "der[y;x]", "s_iso[q;x] coder^[y;q]")
          .add("eta.b", "y", "x", "der^[q;x] t_iso[y;q]", "coder[y;x]")
          .build());

  put(SuiteBuilder("bang-comonoid")
          .role("Delta", "X", "X,X")
          .role("e", "X", "")
          .add("coassoc", "y1,y2,y3", "x", "Delta[p,y3;x] Delta[y1,y2;p]", "Delta[y1,q;x] Delta[y2,y3;q]")
          .add("counit-left", "y", "x", "Delta[p,y;x] e[;p]", "id[y;x]")
          .add("counit-right", "y", "x", "Delta[y,p;x] e[;p]", "id[y;x]")
          .add("cocommutative", "y1,y2", "x", "Delta[y1,y2;x]", "Delta[y2,y1;x]")
          .build());

  {
    SuiteBuilder b("bang-comonad");
    b.role("dig", "X", "XX").role("der", "X", "A").role("bang_der", "XX", "X").role("der_X", "XX", "X");
    b.add("dig-bang-der", "y", "x", "dig[p;x] bang_der[y;p]", "id[y;x]");
    b.add("dig-der", "y", "x", "dig[p;x] der_X[y;p]", "id[y;x]");
    Equation a;
    a.label = "dig-assoc";
    a.custom = [](const Gadget& g, double tol) {
      int n = static_cast<int>(g.morphism("der").rows());
      ExpStructure x = build_exp(n, g.env.degree);
      double r = comonad_associativity_residual(x);
      return Comparison{r <= tol, r};
    };
    b.add(a);
    put(b.build());
  }
  return r;
}

const std::map<std::string, EquationSuite>& registry() {
  static const std::map<std::string, EquationSuite> r = make_registry();
  return r;
}

std::string normalize_name(std::string n) {
  for (auto& ch : n) {
    ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (ch == '_') ch = '-';
  }
  return n;
}

std::vector<long> window_indices(const std::vector<Obj>& ts, const ModelEnv& env, int max_degree) {
  std::vector<int> deg{0};
  for (const auto& t : ts) {
    Basis b = interp(t, env);
    std::vector<int> nd;
    for (int x : deg)
      for (int y : b.degree) nd.push_back(x + y);
    deg = std::move(nd);
  }
  std::vector<long> keep;
  for (size_t i = 0; i < deg.size(); ++i)
    if (max_degree < 0 || deg[i] <= max_degree) keep.push_back(static_cast<long>(i));
  return keep;
}

Mat restrict(const Mat& m, const std::vector<long>& rows, const std::vector<long>& cols) {
  Mat r(static_cast<long>(rows.size()), static_cast<long>(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) r(static_cast<long>(i), static_cast<long>(j)) = m(rows[i], cols[j]);
  return r;
}

} // namespace

TemplateContext EquationSuite::context(const Gadget& g) const {
  TemplateContext c;
  c.gadget = &g;
  c.sigs = sigs;
  for (const auto& d : defs) c.defs[d.name] = d;
  return c;
}

double SuiteReport::worst() const {
  double w = 0.0;
  for (const auto& e : equations)
    if (!e.skipped) w = std::max(w, e.residual);
  return w;
}

const EquationResult& SuiteReport::at(const std::string& label) const {
  for (const auto& e : equations)
    if (e.label == label) return e;
  throw std::out_of_range("no equation " + label + " in suite " + suite);
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json eqs = nlohmann::json::array();
  for (const auto& e : equations) {
    nlohmann::json j = {{"label", e.label}, {"residual", e.residual}, {"pass", e.pass}};
    if (e.skipped) j["skipped"] = true;
    eqs.push_back(j);
  }
  return {{"suite", suite}, {"pass", pass}, {"worst", worst()}, {"equations", eqs}};
}

const EquationSuite& find_suite(const std::string& name) {
  auto it = registry().find(normalize_name(name));
  if (it == registry().end()) throw std::invalid_argument("unknown suite " + name);
  return it->second;
}

std::vector<std::string> suite_names() {
  std::vector<std::string> r;
  for (const auto& [k, v] : registry()) r.push_back(k);
  return r;
}

ModelEnv suite_env(const Gadget& g, const EquationSuite& s) {
  ModelEnv env = g.bound_env();
  const std::string suf = "_inv";
  for (const auto& [role, sg] : s.sigs) {
    if (g.has(role) || role.size() <= suf.size() || role.compare(role.size() - suf.size(), suf.size(), suf) != 0)
      continue;
    std::string base = role.substr(0, role.size() - suf.size());
    if (!g.has(base)) continue;
    const Mat& m = g.morphism(base);
    if (m.rows() == m.cols()) {
      Eigen::FullPivLU<Mat> lu(m);
      if (lu.isInvertible()) {
        env.generators[role] = lu.inverse();
        continue;
      }
    }
    env.generators[role] = m.completeOrthogonalDecomposition().pseudoInverse();
  }
  return env;
}

SuiteReport check_suite(const Gadget& g, const EquationSuite& s, double tol, WindowPolicy policy) {
  SuiteReport rep;
  rep.suite = s.name;
  ModelEnv env = suite_env(g, s);
  TemplateContext ctx = s.context(g);
  for (const auto& e : s.equations) {
    EquationResult res;
    res.label = e.label;
    bool skip = false;
    for (const auto& r : e.optional) skip = skip || !g.has(r);
    if (skip) {
      res.skipped = true;
      rep.equations.push_back(res);
      continue;
    }
    Comparison cmp;
    if (e.custom) {
      cmp = e.custom(g, tol);
    } else {
      auto [l, r] = compile_equation(e.lhs, e.rhs, e.outs, e.ins, ctx);
      Mat ml = evaluate(l, env), mr = evaluate(r, env);
      if (policy == WindowPolicy::Graded && (e.in_slack >= 0 || e.out_slack >= 0)) {
        int din = e.in_slack >= 0 ? env.degree - e.in_slack : -1;
        int dout = e.out_slack >= 0 ? env.degree - e.out_slack : -1;
        auto rows = window_indices(l.output_types(), env, dout);
        auto cols = window_indices(l.input_types(), env, din);
        ml = restrict(ml, rows, cols);
        mr = restrict(mr, rows, cols);
      }
      cmp = matrices_equal(ml, mr, tol);
    }
    res.residual = cmp.residual;
    res.pass = cmp.equal;
    rep.pass = rep.pass && res.pass;
    rep.equations.push_back(res);
  }
  return rep;
}

SuiteReport check_suite(const Gadget& g, const std::string& name, double tol, WindowPolicy policy) {
  return check_suite(g, find_suite(name), tol, policy);
}

SuiteReport require_suite(const Gadget& g, const std::string& name, double tol) {
  SuiteReport r = check_suite(g, name, tol);
  if (!r.pass) throw SuiteFailure(r.suite, r.worst());
  return r;
}

Mat evaluate_definition(const Gadget& g, const std::string& suite, const std::string& def) {
  const EquationSuite& s = find_suite(suite);
  TemplateContext ctx = s.context(g);
  auto it = ctx.defs.find(def);
  if (it == ctx.defs.end()) throw std::invalid_argument("no definition " + def + " in suite " + suite);
  Circuit c = compile_template(it->second.body, it->second.outs, it->second.ins, ctx);
  return evaluate(c, suite_env(g, s));
}

} // namespace ldc
