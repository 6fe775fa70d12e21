#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ldc/circuit.hpp"

namespace ldc {

struct NotExpandable : std::runtime_error {
  explicit NotExpandable(const std::string& w) : std::runtime_error("wire " + w + " is not expandable"), wire(w) {}
  std::string wire;
};

struct RewriteStep {
  std::string rule;
  int node;  // lowest node index of the redex
};

// Applies reductions lowest node first until none remains.
Circuit normalize(const Circuit& c, std::vector<RewriteStep>* log = nullptr);

// One reduction, or false when the circuit is normal.
bool reduce_once(Circuit& c, RewriteStep* step = nullptr);

Circuit expand_wire(const Circuit& c, const std::string& wire);

// Port-graph isomorphism fixing the ordered boundary.
bool isomorphic(const Circuit& a, const Circuit& b);

} // namespace ldc
