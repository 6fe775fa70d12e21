#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

namespace ldc {

class ObjectExpr;
using Obj = std::shared_ptr<const ObjectExpr>;

// Formula grammar for objects: atoms, units, the two tensors, dagger and the
// exponential modalities.
class ObjectExpr {
public:
  enum class Kind { Atom, Top, Bot, Tensor, Par, Dagger, Bang, Quest };

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const Obj& left() const { return left_; }
  const Obj& right() const { return right_; }
  // inner formula of Dagger, Bang and Quest
  const Obj& inner() const { return left_; }

  static Obj atom(std::string name);
  static Obj top();
  static Obj bot();
  static Obj tensor(Obj l, Obj r);
  static Obj par(Obj l, Obj r);
  static Obj dagger(Obj t);
  static Obj bang(Obj t);
  static Obj quest(Obj t);

  ObjectExpr(Kind k, std::string name, Obj l, Obj r)
      : kind_(k), name_(std::move(name)), left_(std::move(l)), right_(std::move(r)) {}

private:
  Kind kind_;
  std::string name_;
  Obj left_;
  Obj right_;
};

bool same_object(const Obj& a, const Obj& b);
std::string to_string(const Obj& t);

nlohmann::json object_to_json(const Obj& t);
Obj object_from_json(const nlohmann::json& j);

struct SchemaError : std::runtime_error {
  explicit SchemaError(const std::string& field) : std::runtime_error("schema error: " + field), field(field) {}
  std::string field;
};

} // namespace ldc
