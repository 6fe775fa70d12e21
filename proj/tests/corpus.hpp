#pragma once

#include <map>
#include <string>

#include "ldc/circuit_io.hpp"

// Expected validity of every circuit fixture, by derivability of the sequent
// the circuit represents.
inline const std::map<std::string, bool>& corpus_expectations() {
  static const std::map<std::string, bool> m = {
      {"left-distributor", true},      {"right-distributor", true},      {"reverse-distributor", false},
      {"mix", false},                  {"comix", false},                 {"identity", true},
      {"tensor-intro-elim", false},    {"par-intro-elim", false},        {"tensor-elim-intro", true},
      {"par-elim-intro", true},        {"tensor-symmetry", true},        {"top-unit-elim", true},
      {"top-unit-intro", true},        {"bot-unit-elim", true},          {"bot-unit-intro", true},
      {"top-intro-elim", true},        {"bot-intro-elim", true},         {"generator-chain", true},
      {"generator-polycut", true},     {"dagger-box", true},             {"top-symmetry-thinning", true},
      {"intro-elim-then-mix", false},
  };
  return m;
}

inline ldc::Circuit corpus_circuit(const std::string& name) {
  return ldc::parse_circuit(ldc::read_file(std::string(LDC_FIXTURE_DIR) + "/" + name + ".json"));
}
