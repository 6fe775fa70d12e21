#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ldc/circuit.hpp"
#include "ldc/gadget.hpp"

namespace ldc {

// Index-notation equation templates.
//
// A side is a whitespace-separated product of factors `name[outs;ins]`.
// Repeated indices are contracted; the rest form the boundary. Factor names:
//   role      generator bound in the gadget (typed by its Signature)
//   role^     dagger box of the role or of a definition
//   def       definition, inlined with fresh internal indices
//   id        aliases its two indices
//   tensor[w;a,c] / untensor[a,c;w] / par[w;a,c] / unpar[a,c;w]
//             structural introduction and elimination nodes
// The ';' may be omitted when the split follows from the signature. When the
// producer and consumer of an index disagree on its type, an identity-valued
// structural isomorphism `$iso` is inserted.

struct TemplateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Signature {
  std::vector<std::string> dom;  // object roles
  std::vector<std::string> cod;
};

struct Definition {
  std::string name;
  std::vector<std::string> outs, ins;
  std::string body;
};

// "name[outs;ins] = body"
Definition parse_definition(const std::string& text);

struct TemplateContext {
  const Gadget* gadget = nullptr;
  std::map<std::string, Signature> sigs;
  std::map<std::string, Definition> defs;
};

using TypeMap = std::map<std::string, Obj>;

Circuit compile_template(const std::string& text, const std::vector<std::string>& outs,
                         const std::vector<std::string>& ins, const TemplateContext& ctx,
                         const TypeMap& boundary = {});

// Both sides with a shared boundary typing.
std::pair<Circuit, Circuit> compile_equation(const std::string& lhs, const std::string& rhs,
                                             const std::vector<std::string>& outs,
                                             const std::vector<std::string>& ins, const TemplateContext& ctx);

} // namespace ldc
