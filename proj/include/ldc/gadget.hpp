#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ldc/model.hpp"
#include "ldc/object.hpp"

namespace ldc {

struct MissingRole : std::runtime_error {
  explicit MissingRole(const std::string& r) : std::runtime_error("missing role " + r), role(r) {}
  std::string role;
};

struct SuiteFailure : std::runtime_error {
  SuiteFailure(const std::string& suite, double residual)
      : std::runtime_error("suite " + suite + " failed, worst residual " + std::to_string(residual)),
        suite(suite), residual(residual) {}
  std::string suite;
  double residual;
};

// Role-tagged matrices over a model environment.
struct Gadget {
  std::string kind;
  std::map<std::string, Obj> objects;
  std::map<std::string, Mat> morphisms;
  ModelEnv env;

  bool has(const std::string& role) const { return morphisms.count(role) > 0; }
  const Mat& morphism(const std::string& role) const;
  // B defaults to the dagger of A, X to A
  Obj object(const std::string& role) const;
  // env with every morphism bound as a generator
  ModelEnv bound_env() const;
};

nlohmann::json gadget_to_json(const Gadget& g);
Gadget gadget_from_json(const nlohmann::json& j);
Gadget load_gadget(const std::string& path);

} // namespace ldc
