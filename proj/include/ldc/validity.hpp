#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ldc/circuit.hpp"

namespace ldc {

struct BoxingStep {
  std::string rule;          // a1 a2 b1 b2 c d1 d2 d3 e1 e3 g
  std::vector<int> boxes;
  int node = -1;             // node absorbed or boxed, if any
  std::string wire;          // wire boxed by d3
};

struct ResidualBox {
  int id;
  std::vector<int> nodes;
  std::vector<std::string> wires;
};

struct StuckState {
  std::vector<ResidualBox> boxes;
  std::vector<int> unboxed_nodes;
  std::vector<std::string> cut_wires;
};

struct ValidityReport {
  bool valid = false;
  std::vector<BoxingStep> trace;
  std::optional<StuckState> stuck;
};

// Deterministic order unless a seed is given, in which case each step picks a
// random applicable rule.
ValidityReport validate(const Circuit& c, std::optional<std::uint64_t> seed = std::nullopt);
bool validate_all_orders(const Circuit& c, const std::vector<std::uint64_t>& seeds);

std::string trace_jsonl(const std::vector<BoxingStep>& trace);
std::string stuck_json(const StuckState& s);

} // namespace ldc
