#pragma once

#include <string>
#include <vector>

#include "gennum/catalog.hpp"

namespace gennum::specparse {

using catalog::GroupSpec;

// grammar:
//   document := item*
//   item     := "group" kind "{" (key "=" value ";")* "}"
//   value    := integer | "[" integer* "]" | "[" row ("," row)* "]"
// kinds: abelian, scalar, matrix, maxclass3, torsion, affine
// lexical errors raise SyntaxError, shape and constraint errors SemanticError
std::vector<GroupSpec> parse_spec(const std::string& text);

// round-trip form accepted by parse_spec
std::string render_spec(const GroupSpec& spec);

}  // namespace gennum::specparse
