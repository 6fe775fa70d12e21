#pragma once

#include <string>
#include <vector>

#include "ldc/gadget.hpp"

namespace ldc {

// Sum_i |ii> as a column and its transpose.
Mat canonical_cup(int n);
Mat canonical_cap(int n);

// Self-linear monoid on atom A (B = A dagger) with the canonical cup and cap for both duals
// and alpha : A -> B the identity.
// m is n x n^2 (column index left * n + right), u is n x 1.
Gadget monoid_gadget(const std::string& kind, const std::vector<std::string>& basis, const Mat& m, const Mat& u);

Gadget weil_gadget();
Gadget quad4_gadget(bool flip = false);
Gadget qubit_zx_gadget();
// Group algebra of Z_n with the copy comonoid; a complementary system.
Gadget cyclic_group_gadget(int n);

std::vector<std::string> builtin_gadget_names();
// Built-in name, or else a gadget JSON file.
Gadget resolve_gadget(const std::string& name_or_path);

} // namespace ldc
