#include "ldc/circuit_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace ldc {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::vector<std::string> string_list(const json& j, const std::string& field) {
  if (!j.is_array()) throw SchemaError(field);
  std::vector<std::string> r;
  for (const auto& x : j) {
    if (!x.is_string()) throw SchemaError(field);
    r.push_back(x.get<std::string>());
  }
  return r;
}

int default_inputs(NodeKind k) {
  switch (k) {
  case NodeKind::TensorIntro:
  case NodeKind::ParIntro:
  case NodeKind::Symmetry: return 2;
  case NodeKind::TensorElim:
  case NodeKind::ParElim:
  case NodeKind::TopElim:
  case NodeKind::BotElim: return 1;
  default: return 0;
  }
}

} // namespace

Circuit circuit_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("circuit");
  for (const char* f : {"wires", "nodes", "inputs", "outputs"})
    if (!j.contains(f)) throw SchemaError(f);
  Circuit c;
  std::set<std::string> ids;
  if (!j["wires"].is_array()) throw SchemaError("wires");
  for (size_t i = 0; i < j["wires"].size(); ++i) {
    const auto& w = j["wires"][i];
    std::string field = "wires[" + std::to_string(i) + "]";
    if (!w.is_object() || !w.contains("id") || !w["id"].is_string()) throw SchemaError(field + ".id");
    if (!w.contains("type")) throw SchemaError(field + ".type");
    std::string id = w["id"].get<std::string>();
    if (!ids.insert(id).second) throw SchemaError(field + ".id");
    c.wires.push_back({id, object_from_json(w["type"])});
  }
  auto known = [&](const std::vector<std::string>& ws, const std::string& field) {
    for (const auto& w : ws)
      if (!ids.count(w)) throw SchemaError(field);
    return ws;
  };
  if (!j["nodes"].is_array()) throw SchemaError("nodes");
  for (size_t i = 0; i < j["nodes"].size(); ++i) {
    const auto& jn = j["nodes"][i];
    std::string field = "nodes[" + std::to_string(i) + "]";
    if (!jn.is_object() || !jn.contains("kind") || !jn["kind"].is_string()) throw SchemaError(field + ".kind");
    auto kind = kind_from_name(jn["kind"].get<std::string>());
    if (!kind) throw SchemaError(field + ".kind");
    Node n;
    n.kind = *kind;
    if (!jn.contains("ports")) throw SchemaError(field + ".ports");
    n.ports = known(string_list(jn["ports"], field + ".ports"), field + ".ports");
    n.n_in = default_inputs(n.kind);
    if (jn.contains("thin")) {
      if (!jn["thin"].is_string()) throw SchemaError(field + ".thin");
      n.thin = jn["thin"].get<std::string>();
      if (!ids.count(n.thin)) throw SchemaError(field + ".thin");
    }
    if ((n.kind == NodeKind::TopElim || n.kind == NodeKind::BotIntro) && n.thin.empty())
      throw SchemaError(field + ".thin");
    if (n.kind == NodeKind::Generator) {
      if (!jn.contains("name") || !jn["name"].is_string()) throw SchemaError(field + ".name");
      n.name = jn["name"].get<std::string>();
      if (!jn.contains("n_in") || !jn["n_in"].is_number_integer()) throw SchemaError(field + ".n_in");
      n.n_in = jn["n_in"].get<int>();
      if (n.n_in < 0 || n.n_in > static_cast<int>(n.ports.size())) throw SchemaError(field + ".n_in");
    }
    if (n.kind == NodeKind::DaggerBox) {
      if (!jn.contains("inner")) throw SchemaError(field + ".inner");
      n.inner = std::make_shared<Circuit>(circuit_from_json(jn["inner"]));
      n.n_in = static_cast<int>(n.inner->outputs.size());
      if (n.n_in > static_cast<int>(n.ports.size())) throw SchemaError(field + ".ports");
    }
    c.nodes.push_back(std::move(n));
  }
  c.inputs = known(string_list(j["inputs"], "inputs"), "inputs");
  c.outputs = known(string_list(j["outputs"], "outputs"), "outputs");
  try {
    check_circuit(c);
  } catch (const IllTyped&) {
    throw;
  } catch (const CircuitError& e) {
    throw SchemaError(std::string("structure (") + e.what() + ")");
  }
  return c;
}

Circuit parse_circuit(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    size_t upto = std::min<size_t>(e.byte, text.size());
    int line = 1;
    for (size_t i = 0; i < upto; ++i)
      if (text[i] == '\n') ++line;
    throw SyntaxError(line, e.what());
  }
  return circuit_from_json(j);
}

json circuit_to_json(const Circuit& c) {
  json j;
  j["wires"] = json::array();
  for (const auto& w : c.wires) j["wires"].push_back({{"id", w.id}, {"type", object_to_json(w.type)}});
  j["nodes"] = json::array();
  for (const auto& n : c.nodes) {
    json jn{{"kind", kind_name(n.kind)}, {"ports", n.ports}};
    if (n.kind == NodeKind::Generator) {
      jn["name"] = n.name;
      jn["n_in"] = n.n_in;
    }
    if (!n.thin.empty()) jn["thin"] = n.thin;
    if (n.inner) jn["inner"] = circuit_to_json(*n.inner);
    j["nodes"].push_back(std::move(jn));
  }
  j["inputs"] = c.inputs;
  j["outputs"] = c.outputs;
  return j;
}

std::string serialize_circuit(const Circuit& c) { return circuit_to_json(c).dump(2) + "\n"; }

namespace {

std::string quote(const std::string& s) {
  std::string r = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') r += '\\';
    r += ch;
  }
  return r + "\"";
}

std::string node_label(const Node& n) {
  switch (n.kind) {
  case NodeKind::Generator: return n.name;
  case NodeKind::TensorIntro: return "(x)I";
  case NodeKind::TensorElim: return "(x)E";
  case NodeKind::ParIntro: return "(+)I";
  case NodeKind::ParElim: return "(+)E";
  case NodeKind::TopIntro: return "T I";
  case NodeKind::TopElim: return "T E";
  case NodeKind::BotIntro: return "F I";
  case NodeKind::BotElim: return "F E";
  case NodeKind::Symmetry: return "sym";
  case NodeKind::DaggerBox: return "dagger";
  }
  return "?";
}

void emit(std::ostringstream& os, const Circuit& c, const std::string& p, int& cluster) {
  // endpoint name of each wire end
  std::map<std::string, std::string> from, to;
  for (size_t i = 0; i < c.inputs.size(); ++i) {
    std::string id = p + "in" + std::to_string(i);
    os << "  " << quote(id) << " [shape=point];\n";
    from[c.inputs[i]] = id;
  }
  for (size_t i = 0; i < c.outputs.size(); ++i) {
    std::string id = p + "out" + std::to_string(i);
    os << "  " << quote(id) << " [shape=point];\n";
    to[c.outputs[i]] = id;
  }
  for (size_t i = 0; i < c.nodes.size(); ++i) {
    const Node& n = c.nodes[i];
    std::string id = p + "n" + std::to_string(i);
    if (n.kind == NodeKind::DaggerBox) {
      os << "  subgraph cluster_" << cluster++ << " {\n  label=\"dagger\";\n  style=dashed;\n";
      os << "  " << quote(id) << " [shape=box,label=\"dagger\"];\n";
      emit(os, *n.inner, id + ".", cluster);
      os << "  }\n";
    } else {
      os << "  " << quote(id) << " [label=" << quote(node_label(n)) << "];\n";
    }
    for (const auto& w : n.inputs()) to[w] = id;
    for (const auto& w : n.outputs()) from[w] = id;
  }
  for (const auto& w : c.wires)
    os << "  " << quote(from[w.id]) << " -> " << quote(to[w.id]) << " [label=" << quote(to_string(w.type))
       << "];\n";
  for (size_t i = 0; i < c.nodes.size(); ++i) {
    const Node& n = c.nodes[i];
    if (n.thin.empty()) continue;
    os << "  " << quote(p + "n" + std::to_string(i)) << " -> " << quote(to[n.thin])
       << " [style=dotted,arrowhead=none];\n";
  }
}

} // namespace

std::string render_dot(const Circuit& c) {
  std::ostringstream os;
  os << "digraph circuit {\n  rankdir=TB;\n";
  int cluster = 0;
  emit(os, c, "", cluster);
  os << "}\n";
  return os.str();
}

} // namespace ldc
