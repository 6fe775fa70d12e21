#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ldc/circuit.hpp"

namespace ldc {

struct SyntaxError : std::runtime_error {
  SyntaxError(int line, const std::string& what)
      : std::runtime_error("syntax error at line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};

Circuit parse_circuit(const std::string& text);
Circuit circuit_from_json(const nlohmann::json& j);
nlohmann::json circuit_to_json(const Circuit& c);
std::string serialize_circuit(const Circuit& c);

std::string render_dot(const Circuit& c);

std::string read_file(const std::string& path);

} // namespace ldc
