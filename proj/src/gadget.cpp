#include "ldc/gadget.hpp"

#include "ldc/circuit_io.hpp"

namespace ldc {

const Mat& Gadget::morphism(const std::string& role) const {
  auto it = morphisms.find(role);
  if (it == morphisms.end()) throw MissingRole(role);
  return it->second;
}

Obj Gadget::object(const std::string& role) const {
  auto it = objects.find(role);
  if (it != objects.end()) return it->second;
  if (role == "B" && objects.count("A")) return ObjectExpr::dagger(objects.at("A"));
  if (role == "X" && objects.count("A")) return objects.at("A");
  throw MissingRole(role);
}

ModelEnv Gadget::bound_env() const {
  ModelEnv e = env;
  for (const auto& [k, m] : morphisms) e.generators[k] = m;
  return e;
}

nlohmann::json gadget_to_json(const Gadget& g) {
  nlohmann::json j;
  j["kind"] = g.kind;
  j["objects"] = nlohmann::json::object();
  for (const auto& [k, t] : g.objects) j["objects"][k] = object_to_json(t);
  j["morphisms"] = nlohmann::json::object();
  for (const auto& [k, m] : g.morphisms) j["morphisms"][k] = matrix_to_json(m);
  j["atoms"] = nlohmann::json::object();
  for (const auto& [k, a] : g.env.atoms) j["atoms"][k] = {{"dim", a.dim}, {"basis", a.basis}};
  j["degree"] = g.env.degree;
  // explicit basis labels for composite objects, e.g. "[a,a,b]" on !A
  for (const auto& [k, t] : g.objects) {
    if (t->kind() == ObjectExpr::Kind::Atom) continue;
    try {
      j["bases"][k] = interp(t, g.env).labels;
    } catch (const UnboundAtom&) {
    }
  }
  return j;
}

Gadget gadget_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("gadget");
  Gadget g;
  try {
    g.kind = j.value("kind", std::string());
    if (j.contains("atoms")) {
      if (!j["atoms"].is_object()) throw SchemaError("atoms");
      for (const auto& [k, a] : j["atoms"].items()) {
        if (!a.contains("dim")) throw SchemaError("atoms." + k + ".dim");
        int dim = a["dim"].get<int>();
        if (dim < 1) throw SchemaError("atoms." + k + ".dim");
        g.env.add_atom(k, dim);
        if (a.contains("basis")) {
          auto labels = a["basis"].get<std::vector<std::string>>();
          if (static_cast<int>(labels.size()) != dim) throw SchemaError("atoms." + k + ".basis");
          g.env.atoms[k].basis = labels;
        }
      }
    }
    if (j.contains("degree")) g.env.degree = j["degree"].get<int>();
    if (!j.contains("objects") || !j["objects"].is_object()) throw SchemaError("objects");
    for (const auto& [k, t] : j["objects"].items())
      g.objects[k] = t.is_string() ? ObjectExpr::atom(t.get<std::string>()) : object_from_json(t);
    if (!j.contains("morphisms") || !j["morphisms"].is_object()) throw SchemaError("morphisms");
    for (const auto& [k, m] : j["morphisms"].items()) g.morphisms[k] = matrix_from_json(m);
  } catch (const nlohmann::json::exception&) {
    throw SchemaError("gadget");
  }
  return g;
}

Gadget load_gadget(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw SyntaxError(0, e.what());
  }
  return gadget_from_json(j);
}

} // namespace ldc
