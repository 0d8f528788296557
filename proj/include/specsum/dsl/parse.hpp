#pragma once

#include <string>

#include "specsum/dsl/ast.hpp"

namespace specsum::dsl {

// Parses scenario text (UTF-8, LF or CRLF) and resolves every
// directive against the operator table.  Errors carry line:column and
// the expected-token set:
//   ParseError       malformed syntax or argument
//   DuplicateLabel   operator label defined twice
//   UnknownDirective check id outside the fixed sixteen
//   UnknownLabel     directive references an undefined operator
ScenarioSpec parse_scenario(const std::string& text);

}  // namespace specsum::dsl
