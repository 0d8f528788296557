#pragma once

#include <string>

#include "specsum/dsl/ast.hpp"

namespace specsum::dsl {

// Canonical text form: operators first in definition order, then set
// lines, then checks; one statement per line, named arguments in a
// fixed order, rationals as reduced "p/q".  serialize(parse(s)) is a
// fixed point of parse-serialize.
std::string serialize_scenario(const ScenarioSpec& spec);

}  // namespace specsum::dsl
