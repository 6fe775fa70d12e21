#include "ldc/circuit.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <unordered_map>

namespace ldc {

namespace {

const std::vector<std::pair<NodeKind, std::string>> kKindNames = {
    {NodeKind::Generator, "generator"},     {NodeKind::TensorIntro, "tensor_intro"},
    {NodeKind::TensorElim, "tensor_elim"},  {NodeKind::ParIntro, "par_intro"},
    {NodeKind::ParElim, "par_elim"},        {NodeKind::TopIntro, "top_intro"},
    {NodeKind::TopElim, "top_elim"},        {NodeKind::BotIntro, "bot_intro"},
    {NodeKind::BotElim, "bot_elim"},        {NodeKind::Symmetry, "symmetry"},
    {NodeKind::DaggerBox, "dagger_box"},
};

using K = ObjectExpr::Kind;

bool is_kind(const Obj& t, K k) { return t && t->kind() == k; }

} // namespace

std::string kind_name(NodeKind k) {
  for (const auto& [kind, name] : kKindNames)
    if (kind == k) return name;
  return "?";
}

std::optional<NodeKind> kind_from_name(const std::string& s) {
  for (const auto& [kind, name] : kKindNames)
    if (name == s) return kind;
  return std::nullopt;
}

const Wire* Circuit::find_wire(const std::string& id) const {
  for (const auto& w : wires)
    if (w.id == id) return &w;
  return nullptr;
}

Obj Circuit::type_of(const std::string& id) const {
  const Wire* w = find_wire(id);
  if (!w) throw CircuitError("unknown wire " + id);
  return w->type;
}

std::vector<Obj> Circuit::input_types() const {
  std::vector<Obj> r;
  for (const auto& w : inputs) r.push_back(type_of(w));
  return r;
}

std::vector<Obj> Circuit::output_types() const {
  std::vector<Obj> r;
  for (const auto& w : outputs) r.push_back(type_of(w));
  return r;
}

std::vector<Obj> dagger_all(const std::vector<Obj>& ts) {
  std::vector<Obj> r;
  for (const auto& t : ts) r.push_back(ObjectExpr::dagger(t));
  return r;
}

namespace {

void check_node(const Circuit& c, int id, const Node& n) {
  auto ty = [&](size_t i) { return c.type_of(n.ports.at(i)); };
  auto arity = [&](int in, int out) {
    if (n.n_in != in || static_cast<int>(n.ports.size()) != in + out)
      throw IllTyped(id, kind_name(n.kind) + " expects " + std::to_string(in) + " inputs and " +
                             std::to_string(out) + " outputs");
  };
  auto anchor = [&] {
    if (n.thin.empty() || !c.find_wire(n.thin)) throw IllTyped(id, "thinning anchor is not a wire");
    if (n.thin == n.ports.at(0)) throw IllTyped(id, "thinning anchored on its own unit wire");
  };
  switch (n.kind) {
  case NodeKind::Generator:
    if (n.n_in < 0 || n.n_in > static_cast<int>(n.ports.size())) throw IllTyped(id, "bad generator arity");
    if (n.name.empty()) throw IllTyped(id, "generator without name");
    break;
  case NodeKind::TensorIntro:
  case NodeKind::ParIntro: {
    arity(2, 1);
    K want = n.kind == NodeKind::TensorIntro ? K::Tensor : K::Par;
    Obj out = ty(2);
    if (!is_kind(out, want) || !same_object(out->left(), ty(0)) || !same_object(out->right(), ty(1)))
      throw IllTyped(id, "introduction output does not match inputs");
    break;
  }
  case NodeKind::TensorElim:
  case NodeKind::ParElim: {
    arity(1, 2);
    K want = n.kind == NodeKind::TensorElim ? K::Tensor : K::Par;
    Obj in = ty(0);
    if (!is_kind(in, want) || !same_object(in->left(), ty(1)) || !same_object(in->right(), ty(2)))
      throw IllTyped(id, "elimination input does not match outputs");
    break;
  }
  case NodeKind::TopIntro:
    arity(0, 1);
    if (!is_kind(ty(0), K::Top)) throw IllTyped(id, "unit wire is not T");
    break;
  case NodeKind::TopElim:
    arity(1, 0);
    if (!is_kind(ty(0), K::Top)) throw IllTyped(id, "unit wire is not T");
    anchor();
    break;
  case NodeKind::BotIntro:
    arity(0, 1);
    if (!is_kind(ty(0), K::Bot)) throw IllTyped(id, "unit wire is not F");
    anchor();
    break;
  case NodeKind::BotElim:
    arity(1, 0);
    if (!is_kind(ty(0), K::Bot)) throw IllTyped(id, "unit wire is not F");
    break;
  case NodeKind::Symmetry:
    arity(2, 2);
    if (!same_object(ty(2), ty(1)) || !same_object(ty(3), ty(0))) throw IllTyped(id, "symmetry types");
    break;
  case NodeKind::DaggerBox: {
    if (!n.inner) throw IllTyped(id, "dagger box without body");
    check_circuit(*n.inner);
    auto ins = dagger_all(n.inner->output_types());
    auto outs = dagger_all(n.inner->input_types());
    arity(static_cast<int>(ins.size()), static_cast<int>(outs.size()));
    for (size_t i = 0; i < ins.size(); ++i)
      if (!same_object(ins[i], ty(i))) throw IllTyped(id, "dagger box input type");
    for (size_t i = 0; i < outs.size(); ++i)
      if (!same_object(outs[i], ty(ins.size() + i))) throw IllTyped(id, "dagger box output type");
    break;
  }
  }
}

} // namespace

std::vector<int> topological_order(const Circuit& c) {
  std::unordered_map<std::string, int> producer;
  for (size_t i = 0; i < c.nodes.size(); ++i)
    for (const auto& w : c.nodes[i].outputs()) producer[w] = static_cast<int>(i);
  std::vector<int> indeg(c.nodes.size(), 0);
  std::vector<std::vector<int>> succ(c.nodes.size());
  for (size_t i = 0; i < c.nodes.size(); ++i)
    for (const auto& w : c.nodes[i].inputs()) {
      auto it = producer.find(w);
      if (it == producer.end()) continue;
      succ[it->second].push_back(static_cast<int>(i));
      ++indeg[i];
    }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (size_t i = 0; i < c.nodes.size(); ++i)
    if (indeg[i] == 0) ready.push(static_cast<int>(i));
  std::vector<int> order;
  while (!ready.empty()) {
    int n = ready.top();
    ready.pop();
    order.push_back(n);
    for (int s : succ[n])
      if (--indeg[s] == 0) ready.push(s);
  }
  if (order.size() != c.nodes.size()) throw CircuitError("circuit has a cycle");
  return order;
}

void check_circuit(const Circuit& c) {
  std::unordered_map<std::string, int> producers, consumers;
  for (const auto& w : c.wires) {
    if (!w.type) throw CircuitError("wire " + w.id + " has no type");
    if (!producers.emplace(w.id, 0).second) throw CircuitError("duplicate wire id " + w.id);
    consumers[w.id] = 0;
  }
  auto bump = [&](std::unordered_map<std::string, int>& m, const std::string& w) {
    auto it = m.find(w);
    if (it == m.end()) throw CircuitError("reference to unknown wire " + w);
    ++it->second;
  };
  for (const auto& w : c.inputs) bump(producers, w);
  for (const auto& w : c.outputs) bump(consumers, w);
  for (const auto& n : c.nodes) {
    for (const auto& w : n.inputs()) bump(consumers, w);
    for (const auto& w : n.outputs()) bump(producers, w);
  }
  for (const auto& w : c.wires) {
    if (producers[w.id] != 1) throw CircuitError("wire " + w.id + " has " + std::to_string(producers[w.id]) + " producers");
    if (consumers[w.id] != 1) throw CircuitError("wire " + w.id + " has " + std::to_string(consumers[w.id]) + " consumers");
  }
  for (size_t i = 0; i < c.nodes.size(); ++i) check_node(c, static_cast<int>(i), c.nodes[i]);
  topological_order(c);
}

std::string CircuitBuilder::wire(Obj type) {
  std::string id = "w" + std::to_string(next_++);
  while (c_.find_wire(id)) id = "w" + std::to_string(next_++);
  c_.wires.push_back({id, std::move(type)});
  return id;
}

std::string CircuitBuilder::input(Obj type) {
  auto w = wire(std::move(type));
  c_.inputs.push_back(w);
  return w;
}

std::vector<std::string> CircuitBuilder::generator(const std::string& name, const std::vector<std::string>& ins,
                                                   const std::vector<Obj>& cod) {
  Node n;
  n.kind = NodeKind::Generator;
  n.name = name;
  n.ports = ins;
  n.n_in = static_cast<int>(ins.size());
  std::vector<std::string> outs;
  for (const auto& t : cod) outs.push_back(wire(t));
  n.ports.insert(n.ports.end(), outs.begin(), outs.end());
  c_.nodes.push_back(std::move(n));
  return outs;
}

std::string CircuitBuilder::tensor_intro(const std::string& l, const std::string& r) {
  auto out = wire(ObjectExpr::tensor(c_.type_of(l), c_.type_of(r)));
  c_.nodes.push_back({NodeKind::TensorIntro, "", {l, r, out}, 2, "", nullptr});
  return out;
}

std::pair<std::string, std::string> CircuitBuilder::tensor_elim(const std::string& w) {
  Obj t = c_.type_of(w);
  if (!is_kind(t, K::Tensor)) throw CircuitError("tensor_elim on non-tensor wire");
  auto l = wire(t->left()), r = wire(t->right());
  c_.nodes.push_back({NodeKind::TensorElim, "", {w, l, r}, 1, "", nullptr});
  return {l, r};
}

std::string CircuitBuilder::par_intro(const std::string& l, const std::string& r) {
  auto out = wire(ObjectExpr::par(c_.type_of(l), c_.type_of(r)));
  c_.nodes.push_back({NodeKind::ParIntro, "", {l, r, out}, 2, "", nullptr});
  return out;
}

std::pair<std::string, std::string> CircuitBuilder::par_elim(const std::string& w) {
  Obj t = c_.type_of(w);
  if (!is_kind(t, K::Par)) throw CircuitError("par_elim on non-par wire");
  auto l = wire(t->left()), r = wire(t->right());
  c_.nodes.push_back({NodeKind::ParElim, "", {w, l, r}, 1, "", nullptr});
  return {l, r};
}

std::string CircuitBuilder::top_intro() {
  auto w = wire(ObjectExpr::top());
  c_.nodes.push_back({NodeKind::TopIntro, "", {w}, 0, "", nullptr});
  return w;
}

void CircuitBuilder::top_elim(const std::string& w, const std::string& anchor) {
  c_.nodes.push_back({NodeKind::TopElim, "", {w}, 1, anchor, nullptr});
}

std::string CircuitBuilder::bot_intro(const std::string& anchor) {
  auto w = wire(ObjectExpr::bot());
  c_.nodes.push_back({NodeKind::BotIntro, "", {w}, 0, anchor, nullptr});
  return w;
}

void CircuitBuilder::bot_elim(const std::string& w) {
  c_.nodes.push_back({NodeKind::BotElim, "", {w}, 1, "", nullptr});
}

std::pair<std::string, std::string> CircuitBuilder::symmetry(const std::string& a, const std::string& b) {
  auto o0 = wire(c_.type_of(b)), o1 = wire(c_.type_of(a));
  c_.nodes.push_back({NodeKind::Symmetry, "", {a, b, o0, o1}, 2, "", nullptr});
  return {o0, o1};
}

std::vector<std::string> CircuitBuilder::dagger_box(const Circuit& inner, const std::vector<std::string>& ins) {
  Node n;
  n.kind = NodeKind::DaggerBox;
  n.inner = std::make_shared<Circuit>(inner);
  n.ports = ins;
  n.n_in = static_cast<int>(ins.size());
  std::vector<std::string> outs;
  for (const auto& t : dagger_all(inner.input_types())) outs.push_back(wire(t));
  n.ports.insert(n.ports.end(), outs.begin(), outs.end());
  c_.nodes.push_back(std::move(n));
  return outs;
}

Circuit CircuitBuilder::build() const {
  check_circuit(c_);
  return c_;
}

Circuit id_wire(const Obj& t) {
  CircuitBuilder b;
  auto w = b.input(t);
  b.mark_output(w);
  return b.build();
}

Circuit generator_circuit(const std::string& name, const std::vector<Obj>& dom, const std::vector<Obj>& cod) {
  CircuitBuilder b;
  std::vector<std::string> ins;
  for (const auto& t : dom) ins.push_back(b.input(t));
  for (const auto& w : b.generator(name, ins, cod)) b.mark_output(w);
  return b.build();
}

Circuit symmetry_circuit(const Obj& a, const Obj& b) {
  CircuitBuilder bld;
  auto x = bld.input(a), y = bld.input(b);
  auto [o0, o1] = bld.symmetry(x, y);
  bld.mark_output(o0);
  bld.mark_output(o1);
  return bld.build();
}

Circuit dagger_box_circuit(const Circuit& inner) {
  CircuitBuilder b;
  std::vector<std::string> ins;
  for (const auto& t : dagger_all(inner.output_types())) ins.push_back(b.input(t));
  for (const auto& w : b.dagger_box(inner, ins)) b.mark_output(w);
  return b.build();
}

namespace {

// Rename every wire reference through `f`.
template <class F>
Circuit rename_wires(const Circuit& c, F f) {
  Circuit r;
  for (const auto& w : c.wires) r.wires.push_back({f(w.id), w.type});
  for (auto n : c.nodes) {
    for (auto& p : n.ports) p = f(p);
    if (!n.thin.empty()) n.thin = f(n.thin);
    r.nodes.push_back(std::move(n));
  }
  for (const auto& w : c.inputs) r.inputs.push_back(f(w));
  for (const auto& w : c.outputs) r.outputs.push_back(f(w));
  return r;
}

Circuit prefixed(const Circuit& c, const std::string& p) {
  return rename_wires(c, [&](const std::string& w) { return p + w; });
}

} // namespace

Circuit canonical_ids(const Circuit& c) {
  std::unordered_map<std::string, std::string> m;
  auto see = [&](const std::string& w) {
    if (!m.count(w)) m.emplace(w, "w" + std::to_string(m.size()));
  };
  for (const auto& w : c.inputs) see(w);
  for (const auto& n : c.nodes)
    for (const auto& p : n.ports) see(p);
  for (const auto& w : c.outputs) see(w);
  for (const auto& w : c.wires) see(w.id);
  return rename_wires(c, [&](const std::string& w) { return m.at(w); });
}

Circuit compose(const Circuit& f, const Circuit& g) {
  if (f.outputs.size() != g.inputs.size())
    throw CircuitError("compose: " + std::to_string(f.outputs.size()) + " outputs against " +
                       std::to_string(g.inputs.size()) + " inputs");
  for (size_t i = 0; i < f.outputs.size(); ++i) {
    Obj a = f.type_of(f.outputs[i]), b = g.type_of(g.inputs[i]);
    if (!same_object(a, b)) throw TypeMismatch(i, a, b);
  }
  Circuit F = prefixed(f, "f.");
  Circuit G = prefixed(g, "g.");
  std::unordered_map<std::string, std::string> glue;
  for (size_t i = 0; i < F.outputs.size(); ++i) glue[G.inputs[i]] = F.outputs[i];
  G = rename_wires(G, [&](const std::string& w) {
    auto it = glue.find(w);
    return it == glue.end() ? w : it->second;
  });
  Circuit r;
  r.wires = F.wires;
  std::set<std::string> have;
  for (const auto& w : r.wires) have.insert(w.id);
  for (const auto& w : G.wires)
    if (have.insert(w.id).second) r.wires.push_back(w);
  r.nodes = F.nodes;
  r.nodes.insert(r.nodes.end(), G.nodes.begin(), G.nodes.end());
  r.inputs = F.inputs;
  r.outputs = G.outputs;
  r = canonical_ids(r);
  check_circuit(r);
  return r;
}

Circuit tensor_parallel(const Circuit& f, const Circuit& g) {
  Circuit F = prefixed(f, "f.");
  Circuit G = prefixed(g, "g.");
  Circuit r = F;
  r.wires.insert(r.wires.end(), G.wires.begin(), G.wires.end());
  r.nodes.insert(r.nodes.end(), G.nodes.begin(), G.nodes.end());
  r.inputs.insert(r.inputs.end(), G.inputs.begin(), G.inputs.end());
  r.outputs.insert(r.outputs.end(), G.outputs.begin(), G.outputs.end());
  return canonical_ids(r);
}

} // namespace ldc
