#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "specsum/tolerances.hpp"

namespace specsum::dsl {

// Outcome of one directive.  status partitions the exit-code classes:
//   ok         the check ran and its statement holds
//   violation  a stated hypothesis or conclusion fails
//   refused    the checker declines to decide (blocks, budgets, ...)
//   error      internal or usage failure
struct DirectiveResult {
  std::string check;
  std::vector<std::string> inputs;
  std::string status;
  std::string verdict;
  nlohmann::ordered_json certificate = nlohmann::ordered_json::object();
  std::string error_kind;
  std::string error_message;
  std::uint64_t seed = 0;    // per-directive derived stream
  double timing_ms = -1.0;   // emitted only when nonnegative
  std::string csv_key;       // the one scalar the CSV view keeps
  std::string csv_value;
};

struct AnalysisReport {
  Settings settings;
  std::vector<DirectiveResult> results;
};

// Full canonical JSON; field order is fixed, doubles use the shortest
// round-trip form, so equal reports emit identical bytes.
std::string emit_json(const AnalysisReport& rep);

// Flat CSV: check, inputs, status, verdict, one salient certificate
// scalar per row; RFC-style quoting.
std::string emit_csv(const AnalysisReport& rep);

std::string emit(const AnalysisReport& rep, const std::string& format);

}  // namespace specsum::dsl
