#include "ldc/object.hpp"

namespace ldc {

Obj ObjectExpr::atom(std::string name) {
  if (name.empty()) throw std::invalid_argument("atom name must be nonempty");
  return std::make_shared<ObjectExpr>(Kind::Atom, std::move(name), nullptr, nullptr);
}
Obj ObjectExpr::top() { return std::make_shared<ObjectExpr>(Kind::Top, "", nullptr, nullptr); }
Obj ObjectExpr::bot() { return std::make_shared<ObjectExpr>(Kind::Bot, "", nullptr, nullptr); }
Obj ObjectExpr::tensor(Obj l, Obj r) { return std::make_shared<ObjectExpr>(Kind::Tensor, "", std::move(l), std::move(r)); }
Obj ObjectExpr::par(Obj l, Obj r) { return std::make_shared<ObjectExpr>(Kind::Par, "", std::move(l), std::move(r)); }
Obj ObjectExpr::dagger(Obj t) { return std::make_shared<ObjectExpr>(Kind::Dagger, "", std::move(t), nullptr); }
Obj ObjectExpr::bang(Obj t) { return std::make_shared<ObjectExpr>(Kind::Bang, "", std::move(t), nullptr); }
Obj ObjectExpr::quest(Obj t) { return std::make_shared<ObjectExpr>(Kind::Quest, "", std::move(t), nullptr); }

bool same_object(const Obj& a, const Obj& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind()) return false;
  using K = ObjectExpr::Kind;
  switch (a->kind()) {
  case K::Atom: return a->name() == b->name();
  case K::Top:
  case K::Bot: return true;
  case K::Tensor:
  case K::Par: return same_object(a->left(), b->left()) && same_object(a->right(), b->right());
  default: return same_object(a->inner(), b->inner());
  }
}

std::string to_string(const Obj& t) {
  using K = ObjectExpr::Kind;
  switch (t->kind()) {
  case K::Atom: return t->name();
  case K::Top: return "T";
  case K::Bot: return "F";
  case K::Tensor: return "(" + to_string(t->left()) + " * " + to_string(t->right()) + ")";
  case K::Par: return "(" + to_string(t->left()) + " + " + to_string(t->right()) + ")";
  case K::Dagger: return to_string(t->inner()) + "'";
  case K::Bang: return "!" + to_string(t->inner());
  case K::Quest: return "?" + to_string(t->inner());
  }
  return "?";
}

nlohmann::json object_to_json(const Obj& t) {
  using K = ObjectExpr::Kind;
  using nlohmann::json;
  switch (t->kind()) {
  case K::Atom: return json{{"atom", t->name()}};
  case K::Top: return json{{"top", json::object()}};
  case K::Bot: return json{{"bot", json::object()}};
  case K::Tensor: return json{{"tensor", json::array({object_to_json(t->left()), object_to_json(t->right())})}};
  case K::Par: return json{{"par", json::array({object_to_json(t->left()), object_to_json(t->right())})}};
  case K::Dagger: return json{{"dagger", object_to_json(t->inner())}};
  case K::Bang: return json{{"bang", object_to_json(t->inner())}};
  case K::Quest: return json{{"quest", object_to_json(t->inner())}};
  }
  return {};
}

Obj object_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.size() != 1) throw SchemaError("type");
  auto it = j.begin();
  const std::string& key = it.key();
  const auto& v = it.value();
  auto pair = [&](auto make) {
    if (!v.is_array() || v.size() != 2) throw SchemaError("type." + key);
    return make(object_from_json(v[0]), object_from_json(v[1]));
  };
  if (key == "atom") {
    if (!v.is_string() || v.get<std::string>().empty()) throw SchemaError("type.atom");
    return ObjectExpr::atom(v.get<std::string>());
  }
  if (key == "top") return ObjectExpr::top();
  if (key == "bot") return ObjectExpr::bot();
  if (key == "tensor") return pair(ObjectExpr::tensor);
  if (key == "par") return pair(ObjectExpr::par);
  if (key == "dagger") return ObjectExpr::dagger(object_from_json(v));
  if (key == "bang") return ObjectExpr::bang(object_from_json(v));
  if (key == "quest") return ObjectExpr::quest(object_from_json(v));
  throw SchemaError("type." + key);
}

} // namespace ldc
