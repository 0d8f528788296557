#pragma once

#include <map>
#include <string>
#include <vector>

#include "specsum/operator_model.hpp"

namespace specsum::dsl {

// One operator definition: either a symbolic diagonal (with optional
// exact block) or a finite Hermitian matrix literal.
struct OperatorDef {
  std::string label;
  bool is_matrix = false;
  ModelOperator op;             // diag form
  HermitianRational mat;        // matrix literal, exact
  long long line = 0;
};

// A `check` line.  Labels stay unresolved strings so the spec can be
// serialized without the operator table; the runner resolves them.
struct Directive {
  std::string id;
  std::vector<std::string> labels;
  std::vector<std::vector<std::string>> groups;  // grouped only
  std::map<std::string, Rat> rat_args;           // eps, delta, lambda
  std::map<std::string, long long> int_args;     // length, n, rank, samples
  std::vector<long long> sizes;                  // converge only
  long long line = 0;
};

struct ScenarioSpec {
  std::vector<OperatorDef> operators;
  std::vector<Directive> directives;
  // `set` lines in file order: seed, trunc-size, scan-budget.
  std::vector<std::pair<std::string, long long>> settings;

  const OperatorDef* find(const std::string& label) const {
    for (const auto& d : operators)
      if (d.label == label) return &d;
    return nullptr;
  }
};

// The sixteen check ids, in canonical listing order.
const std::vector<std::string>& directive_ids();

}  // namespace specsum::dsl
