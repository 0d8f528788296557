#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specsum/qpoly.hpp"
#include "specsum/rational.hpp"

namespace specsum {

// One factor (s*j - w)^(-e) of a strand term.
// Invariants: e > 0, s >= 1, 0 <= w <= s - 1, so the base is a
// positive integer for every local index j >= 1 and increases with j.
// Source-level terms use s = 1, w = 0; general (s, w) arise from
// re-indexing a strand onto a finer modulus, which keeps the term
// class closed under refinement.
struct Factor {
  Rat e;
  long long s = 1;
  long long w = 0;

  friend bool operator==(const Factor&, const Factor&) = default;
};

// coeff * product of factors.  A term with no factors is a constant.
struct Term {
  Rat coeff;
  std::vector<Factor> factors;

  Rat decay() const;
  bool is_const() const { return factors.empty(); }

  friend bool operator==(const Term&, const Term&) = default;
};

// Exact value of one strand as a function of the local index j >= 1.
// Canonical form: terms merged, zero coefficients dropped, sorted by
// total decay ascending; the decay-0 term (if any) is first and its
// coefficient is the strand's limit.
class StrandExpr {
 public:
  StrandExpr() = default;

  static StrandExpr constant(const Rat& c);
  // c * j^-e with e >= 0 (e = 0 folds into a constant).
  static StrandExpr power_term(const Rat& c, const Rat& e);
  static StrandExpr from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rat limit() const;
  bool integer_exponents() const;
  // The single factor base shared by every non-constant term, if any.
  std::optional<std::pair<long long, long long>> single_base() const;

  StrandExpr plus(const StrandExpr& o) const;
  StrandExpr times(const StrandExpr& o) const;
  StrandExpr negated() const;
  // Substitutes j = step*J - (step - offset): the value at new local
  // index J equals the old value at that old index.  1 <= offset <= step.
  StrandExpr reindexed(long long step, long long offset) const;

  std::string str() const;

  friend bool operator==(const StrandExpr&, const StrandExpr&) = default;

 private:
  std::vector<Term> terms_;
};

// --- exact decision queries -------------------------------------------
//
// All queries answer about real values of the strand expression; the
// implementation clears denominators into Z[x] sign problems when all
// exponents are integral, substitutes x = base^(1/q) for a single
// fractional base, and falls back to certified interval refinement
// against minimal-polynomial reductions otherwise.

// Sign of v(j) - theta for every j >= from_j (0 means identically
// equal beyond from_j).
struct SignBeyond {
  int sign = 0;
  long long from_j = 1;
};
SignBeyond sign_beyond(const StrandExpr& v, const Rat& theta);

// Exact sign of v(j) - theta at one index.
int value_cmp(const StrandExpr& v, long long j, const Rat& theta);

// Exact value when it is rational.
std::optional<Rat> eval_exact(const StrandExpr& v, long long j);

// Certified enclosure of v(j).
std::pair<Rat, Rat> eval_interval(const StrandExpr& v, long long j, unsigned long prec);

// Eventual status of |v(j)| <= eps, eps > 0, with an index it settles by.
struct AbsLeStatus {
  bool eventually_in = false;
  long long settle_j = 1;
};
AbsLeStatus abs_le_status(const StrandExpr& v, const Rat& eps);

// All j with v(j) = 0, for v not identically zero.
std::vector<long long> zero_js(const StrandExpr& v, long long budget);

}  // namespace specsum
