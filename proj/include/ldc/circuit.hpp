#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldc/object.hpp"

namespace ldc {

enum class NodeKind {
  Generator,
  TensorIntro,
  TensorElim,
  ParIntro,
  ParElim,
  TopIntro,
  TopElim,
  BotIntro,
  BotElim,
  Symmetry,
  DaggerBox
};

std::string kind_name(NodeKind k);
std::optional<NodeKind> kind_from_name(const std::string& s);

struct Circuit;

struct Node {
  NodeKind kind = NodeKind::Generator;
  std::string name;                 // generator name
  std::vector<std::string> ports;   // inputs then outputs
  int n_in = 0;                     // number of input ports
  std::string thin;                 // anchor wire for TopElim / BotIntro
  std::shared_ptr<const Circuit> inner;  // DaggerBox body

  std::vector<std::string> inputs() const { return {ports.begin(), ports.begin() + n_in}; }
  std::vector<std::string> outputs() const { return {ports.begin() + n_in, ports.end()}; }
};

struct Wire {
  std::string id;
  Obj type;
};

struct Circuit {
  std::vector<Wire> wires;
  std::vector<Node> nodes;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;

  const Wire* find_wire(const std::string& id) const;
  Obj type_of(const std::string& id) const;
  std::vector<Obj> input_types() const;
  std::vector<Obj> output_types() const;
};

struct CircuitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TypeMismatch : CircuitError {
  TypeMismatch(size_t pos, const Obj& expected, const Obj& found)
      : CircuitError("type mismatch at position " + std::to_string(pos) + ": expected " +
                     to_string(expected) + ", found " + to_string(found)),
        position(pos) {}
  size_t position;
};

struct IllTyped : CircuitError {
  IllTyped(int node, const std::string& why)
      : CircuitError("ill-typed node " + std::to_string(node) + ": " + why), node(node) {}
  int node;
};

// Throws IllTyped or CircuitError when the circuit breaks a structural invariant.
void check_circuit(const Circuit& c);

// Incremental construction with fresh wire ids.
class CircuitBuilder {
public:
  std::string wire(Obj type);
  std::string input(Obj type);
  void mark_input(const std::string& w) { c_.inputs.push_back(w); }
  void mark_output(const std::string& w) { c_.outputs.push_back(w); }

  std::vector<std::string> generator(const std::string& name, const std::vector<std::string>& ins,
                                     const std::vector<Obj>& cod);
  std::string tensor_intro(const std::string& l, const std::string& r);
  std::pair<std::string, std::string> tensor_elim(const std::string& w);
  std::string par_intro(const std::string& l, const std::string& r);
  std::pair<std::string, std::string> par_elim(const std::string& w);
  std::string top_intro();
  void top_elim(const std::string& w, const std::string& anchor);
  std::string bot_intro(const std::string& anchor);
  void bot_elim(const std::string& w);
  std::pair<std::string, std::string> symmetry(const std::string& a, const std::string& b);
  std::vector<std::string> dagger_box(const Circuit& inner, const std::vector<std::string>& ins);

  Circuit build() const;
  const Circuit& peek() const { return c_; }

private:
  Circuit c_;
  int next_ = 0;
};

Circuit id_wire(const Obj& t);
Circuit generator_circuit(const std::string& name, const std::vector<Obj>& dom, const std::vector<Obj>& cod);
Circuit symmetry_circuit(const Obj& a, const Obj& b);
Circuit dagger_box_circuit(const Circuit& inner);

// Boundary of the box is the dagger of the inner boundary, inputs and outputs swapped.
std::vector<Obj> dagger_all(const std::vector<Obj>& ts);

// Sequential composition: outputs of f glued to inputs of g.
Circuit compose(const Circuit& f, const Circuit& g);
// Disjoint union with concatenated boundaries.
Circuit tensor_parallel(const Circuit& f, const Circuit& g);

// Renames every wire to w0, w1, ... in first-seen order.
Circuit canonical_ids(const Circuit& c);

// Flow-ordered node indices; throws CircuitError on a cycle.
std::vector<int> topological_order(const Circuit& c);

} // namespace ldc
