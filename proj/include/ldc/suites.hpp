#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ldc/gadget.hpp"
#include "ldc/templates.hpp"

namespace ldc {

struct Equation {
  std::string label;
  std::vector<std::string> outs, ins;
  std::string lhs, rhs;
  // Degree window: compare only boundary basis elements of degree <= degree - slack.
  int in_slack = -1;
  int out_slack = -1;
  // Skipped when any of these roles is absent from the gadget.
  std::vector<std::string> optional;
  // Replaces lhs/rhs evaluation when set.
  std::function<Comparison(const Gadget&, double)> custom;
};

struct EquationSuite {
  std::string name;
  std::map<std::string, Signature> sigs;
  std::vector<Definition> defs;
  std::vector<Equation> equations;

  TemplateContext context(const Gadget& g) const;
};

struct EquationResult {
  std::string label;
  double residual = 0.0;
  bool pass = true;
  bool skipped = false;
};

struct SuiteReport {
  std::string suite;
  bool pass = true;
  std::vector<EquationResult> equations;

  double worst() const;
  // residual above 1e3 * tol somewhere
  bool fails_strongly(double tol) const { return worst() > 1e3 * tol; }
  const EquationResult& at(const std::string& label) const;
  nlohmann::json to_json() const;
};

enum class WindowPolicy { Graded, Full };

// Accepts registry names in either style, e.g. "DAGGER_LINEAR_MONOID" or "dagger-linear-monoid".
const EquationSuite& find_suite(const std::string& name);
std::vector<std::string> suite_names();

SuiteReport check_suite(const Gadget& g, const EquationSuite& s, double tol,
                        WindowPolicy policy = WindowPolicy::Graded);
SuiteReport check_suite(const Gadget& g, const std::string& name, double tol,
                        WindowPolicy policy = WindowPolicy::Graded);
// Throws SuiteFailure unless the suite passes.
SuiteReport require_suite(const Gadget& g, const std::string& name, double tol);

// Evaluates a definition of a suite against a gadget.
Mat evaluate_definition(const Gadget& g, const std::string& suite, const std::string& def);

// Environment with every role bound, plus "<role>_inv" for invertible roles the suite needs.
ModelEnv suite_env(const Gadget& g, const EquationSuite& s);

} // namespace ldc
