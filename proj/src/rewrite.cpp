#include "ldc/rewrite.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace ldc {

namespace {

using K = ObjectExpr::Kind;

struct End {
  int node = -1;  // -1 means boundary
  int port = -1;  // port index, or boundary position
};

struct Incidence {
  std::map<std::string, End> producer, consumer;
  std::map<std::string, std::vector<int>> anchored;  // wire -> nodes thinning-linked to it

  explicit Incidence(const Circuit& c) {
    for (size_t i = 0; i < c.inputs.size(); ++i) producer[c.inputs[i]] = {-1, static_cast<int>(i)};
    for (size_t i = 0; i < c.outputs.size(); ++i) consumer[c.outputs[i]] = {-1, static_cast<int>(i)};
    for (size_t n = 0; n < c.nodes.size(); ++n) {
      const Node& nd = c.nodes[n];
      for (size_t p = 0; p < nd.ports.size(); ++p)
        (static_cast<int>(p) < nd.n_in ? consumer : producer)[nd.ports[p]] = {static_cast<int>(n), static_cast<int>(p)};
      if (!nd.thin.empty()) anchored[nd.thin].push_back(static_cast<int>(n));
    }
  }

  bool is_anchor(const std::string& w) const {
    auto it = anchored.find(w);
    return it != anchored.end() && !it->second.empty();
  }
  bool anchor_only_by(const std::string& w, int n) const {
    auto it = anchored.find(w);
    return it == anchored.end() || std::all_of(it->second.begin(), it->second.end(), [&](int k) { return k == n; });
  }
};

void rename_refs(Circuit& c, const std::string& from, const std::string& to) {
  auto sub = [&](std::string& s) {
    if (s == from) s = to;
  };
  for (auto& n : c.nodes) {
    for (auto& p : n.ports) sub(p);
    sub(n.thin);
  }
  for (auto& w : c.inputs) sub(w);
  for (auto& w : c.outputs) sub(w);
}

void erase(Circuit& c, std::set<int> nodes, std::set<std::string> wires) {
  std::vector<Node> keep;
  for (size_t i = 0; i < c.nodes.size(); ++i)
    if (!nodes.count(static_cast<int>(i))) keep.push_back(c.nodes[i]);
  c.nodes = std::move(keep);
  c.wires.erase(std::remove_if(c.wires.begin(), c.wires.end(), [&](const Wire& w) { return wires.count(w.id) > 0; }),
                c.wires.end());
}

bool is(const Circuit& c, int n, NodeKind k) { return n >= 0 && c.nodes[n].kind == k; }

// Intro feeding the matching Elim: the two branch wires pass straight through.
bool intro_elim(Circuit& c, const Incidence& inc, int i, NodeKind intro, NodeKind elim) {
  if (!is(c, i, intro)) return false;
  const Node& n = c.nodes[i];
  std::string w = n.ports[2];
  End e = inc.consumer.at(w);
  if (!is(c, e.node, elim) || inc.is_anchor(w)) return false;
  int j = e.node;
  std::string a = n.ports[0], b = n.ports[1];
  std::string x = c.nodes[j].ports[1], y = c.nodes[j].ports[2];
  erase(c, {i, j}, {w, x, y});
  rename_refs(c, x, a);
  rename_refs(c, y, b);
  return true;
}

// Elim whose branches feed the matching Intro in order: the wire passes through.
bool elim_intro(Circuit& c, const Incidence& inc, int i, NodeKind elim, NodeKind intro) {
  if (!is(c, i, elim)) return false;
  const Node& n = c.nodes[i];
  std::string w = n.ports[0], l = n.ports[1], r = n.ports[2];
  End el = inc.consumer.at(l), er = inc.consumer.at(r);
  if (!is(c, el.node, intro) || el.node != er.node || el.port != 0 || er.port != 1) return false;
  if (inc.is_anchor(l) || inc.is_anchor(r)) return false;
  int j = el.node;
  std::string out = c.nodes[j].ports[2];
  erase(c, {i, j}, {l, r, out});
  rename_refs(c, out, w);
  return true;
}

std::optional<std::string> try_at(Circuit& c, const Incidence& inc, int i) {
  if (intro_elim(c, inc, i, NodeKind::TensorIntro, NodeKind::TensorElim)) return "tensor-beta";
  if (intro_elim(c, inc, i, NodeKind::ParIntro, NodeKind::ParElim)) return "par-beta";
  if (elim_intro(c, inc, i, NodeKind::TensorElim, NodeKind::TensorIntro)) return "tensor-eta";
  if (elim_intro(c, inc, i, NodeKind::ParElim, NodeKind::ParIntro)) return "par-eta";
  const Node& n = c.nodes[i];
  if (n.kind == NodeKind::TopIntro) {
    std::string t = n.ports[0];
    End e = inc.consumer.at(t);
    if (is(c, e.node, NodeKind::TopElim) && !inc.is_anchor(t)) {
      erase(c, {i, e.node}, {t});
      return "top-cancel";
    }
  }
  if (n.kind == NodeKind::BotIntro) {
    std::string t = n.ports[0];
    End e = inc.consumer.at(t);
    if (is(c, e.node, NodeKind::BotElim) && !inc.is_anchor(t)) {
      erase(c, {i, e.node}, {t});
      return "bot-cancel";
    }
    // unit slide: the bot wire is eliminated and re-introduced on its own anchor
    std::string w = n.thin;
    End we = inc.consumer.at(w);
    if (is(c, we.node, NodeKind::BotElim) && inc.anchor_only_by(w, i)) {
      erase(c, {i, we.node}, {t});
      rename_refs(c, t, w);
      return "bot-slide";
    }
  }
  if (n.kind == NodeKind::TopElim) {
    std::string w = n.ports[0], t = n.thin;
    End tp = inc.producer.at(t);
    if (is(c, tp.node, NodeKind::TopIntro) && inc.anchor_only_by(t, i)) {
      erase(c, {i, tp.node}, {t});
      rename_refs(c, t, w);
      return "top-slide";
    }
  }
  return std::nullopt;
}

} // namespace

bool reduce_once(Circuit& c, RewriteStep* step) {
  Incidence inc(c);
  for (size_t i = 0; i < c.nodes.size(); ++i) {
    if (auto r = try_at(c, inc, static_cast<int>(i))) {
      if (step) *step = {*r, static_cast<int>(i)};
      return true;
    }
  }
  return false;
}

Circuit normalize(const Circuit& c, std::vector<RewriteStep>* log) {
  check_circuit(c);
  Circuit r = c;
  RewriteStep s;
  while (reduce_once(r, &s))
    if (log) log->push_back(s);
  check_circuit(r);
  return r;
}

Circuit expand_wire(const Circuit& c, const std::string& wire) {
  Obj t = c.type_of(wire);
  Circuit r = c;
  Incidence inc(c);
  std::string fresh_base = "x";
  int k = 0;
  auto fresh = [&](Obj ty) {
    std::string id;
    do id = fresh_base + std::to_string(k++);
    while (r.find_wire(id));
    r.wires.push_back({id, std::move(ty)});
    return id;
  };
  // redirect the consumer end of `wire` to a new wire
  auto redirect = [&](const std::string& to) {
    End e = inc.consumer.at(wire);
    if (e.node < 0) r.outputs[e.port] = to;
    else r.nodes[e.node].ports[e.port] = to;
  };
  switch (t->kind()) {
  case K::Tensor:
  case K::Par: {
    bool ten = t->kind() == K::Tensor;
    std::string l = fresh(t->left()), rr = fresh(t->right()), w2 = fresh(t);
    redirect(w2);
    r.nodes.push_back({ten ? NodeKind::TensorElim : NodeKind::ParElim, "", {wire, l, rr}, 1, "", nullptr});
    r.nodes.push_back({ten ? NodeKind::TensorIntro : NodeKind::ParIntro, "", {l, rr, w2}, 2, "", nullptr});
    break;
  }
  case K::Top: {
    std::string t2 = fresh(t);
    redirect(t2);
    r.nodes.push_back({NodeKind::TopElim, "", {wire}, 1, t2, nullptr});
    r.nodes.push_back({NodeKind::TopIntro, "", {t2}, 0, "", nullptr});
    break;
  }
  case K::Bot: {
    std::string b2 = fresh(t);
    redirect(b2);
    r.nodes.push_back({NodeKind::BotElim, "", {wire}, 1, "", nullptr});
    r.nodes.push_back({NodeKind::BotIntro, "", {b2}, 0, wire, nullptr});
    break;
  }
  default: throw NotExpandable(wire);
  }
  check_circuit(r);
  return r;
}

namespace {

class Matcher {
public:
  Matcher(const Circuit& a, const Circuit& b) : a_(a), b_(b), ia_(a), ib_(b) {}

  bool run() {
    if (a_.inputs.size() != b_.inputs.size() || a_.outputs.size() != b_.outputs.size()) return false;
    if (a_.nodes.size() != b_.nodes.size() || a_.wires.size() != b_.wires.size()) return false;
    State s;
    for (size_t i = 0; i < a_.inputs.size(); ++i)
      if (!wire(s, a_.inputs[i], b_.inputs[i])) return false;
    for (size_t i = 0; i < a_.outputs.size(); ++i)
      if (!wire(s, a_.outputs[i], b_.outputs[i])) return false;
    return search(s);
  }

private:
  struct State {
    std::map<std::string, std::string> w, wr;
    std::map<int, int> n, nr;
  };
  const Circuit& a_;
  const Circuit& b_;
  Incidence ia_, ib_;

  bool end(State& s, const End& x, const End& y) {
    if ((x.node < 0) != (y.node < 0) || x.port != y.port) return false;
    return x.node < 0 || node(s, x.node, y.node);
  }

  bool wire(State& s, const std::string& x, const std::string& y) {
    auto it = s.w.find(x);
    if (it != s.w.end()) return it->second == y;
    if (s.wr.count(y)) return false;
    if (!same_object(a_.type_of(x), b_.type_of(y))) return false;
    s.w[x] = y;
    s.wr[y] = x;
    return end(s, ia_.producer.at(x), ib_.producer.at(y)) && end(s, ia_.consumer.at(x), ib_.consumer.at(y));
  }

  bool node(State& s, int x, int y) {
    auto it = s.n.find(x);
    if (it != s.n.end()) return it->second == y;
    if (s.nr.count(y)) return false;
    const Node& p = a_.nodes[x];
    const Node& q = b_.nodes[y];
    if (p.kind != q.kind || p.name != q.name || p.n_in != q.n_in || p.ports.size() != q.ports.size()) return false;
    if (p.thin.empty() != q.thin.empty()) return false;
    if (p.inner && !isomorphic(*p.inner, *q.inner)) return false;
    s.n[x] = y;
    s.nr[y] = x;
    for (size_t i = 0; i < p.ports.size(); ++i)
      if (!wire(s, p.ports[i], q.ports[i])) return false;
    return p.thin.empty() || wire(s, p.thin, q.thin);
  }

  bool search(State& s) {
    int x = -1;
    for (size_t i = 0; i < a_.nodes.size(); ++i)
      if (!s.n.count(static_cast<int>(i))) {
        x = static_cast<int>(i);
        break;
      }
    if (x < 0) return s.w.size() == a_.wires.size();
    for (size_t y = 0; y < b_.nodes.size(); ++y) {
      if (s.nr.count(static_cast<int>(y))) continue;
      State t = s;
      if (node(t, x, static_cast<int>(y)) && search(t)) {
        s = t;
        return true;
      }
    }
    return false;
  }
};

} // namespace

bool isomorphic(const Circuit& a, const Circuit& b) { return Matcher(a, b).run(); }

} // namespace ldc
