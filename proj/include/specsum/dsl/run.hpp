#pragma once

#include <optional>

#include "specsum/dsl/ast.hpp"
#include "specsum/dsl/report.hpp"

namespace specsum::dsl {

struct RunOptions {
  // Command-line overrides; scenario `set` lines fill the rest,
  // built-in defaults last.
  std::optional<std::uint64_t> seed;
  std::optional<int> trunc_size;
  bool parallel = false;
  bool timings = false;
  Tolerances tol = default_tolerances();
};

// Executes the directives in order.  Failures are recorded per
// directive, never fatal; per-directive randomness derives from
// (seed, directive index) so parallel runs emit identical reports.
AnalysisReport run_scenario(const ScenarioSpec& spec, const RunOptions& opt);

// Exit-code class of a finished report: 0 all ok, 2 violations or
// refusals, 1 errors.
int report_exit_code(const AnalysisReport& rep);

}  // namespace specsum::dsl
