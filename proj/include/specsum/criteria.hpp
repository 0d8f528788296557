#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "specsum/numeric/gram.hpp"
#include "specsum/rng.hpp"

namespace specsum {

// Pairwise compactness A_i A_j for i != j, the standing hypothesis.
struct HypothesesReport {
  bool ok = true;
  std::vector<std::pair<std::string, std::string>> failing_pairs;
};
HypothesesReport check_hypotheses(const std::vector<ModelOperator>& ops);

// sigma_e(sum A_i) \ {0} = union sigma_e(A_i) \ {0} under the
// hypothesis; both sides exact.
struct TheoremAReport {
  std::vector<Rat> sum_essential;
  std::vector<Rat> union_essential;
  bool equal_away_from_zero = false;
};
TheoremAReport check_theorem_a(const std::vector<ModelOperator>& ops);

enum class EssentialVerdict { InEssential, NotInEssential };

struct ZeroEssentialReport {
  EssentialVerdict verdict = EssentialVerdict::NotInEssential;
  long long modulus = 1;
  // InEssential: a joint strand on which every diagonal limit is zero.
  long long witness_strand = -1;
  // NotInEssential: half the smallest nonzero per-strand max |limit|,
  // with dim H_eps finite (count recorded).
  Rat eps = Rat(0);
  long long core_count = -1;
  bool oracle_agrees = false;
};
ZeroEssentialReport check_zero_essential(const std::vector<ModelOperator>& ops);

// Constructive singular sequence for the sum at 0: basis indices
// k_1 < k_2 < ... with |diag_i(k_m)| <= 1/m for every operator, hence
// ||A e_{k_m}|| <= N/m for the diagonal sum.
struct SingularSchedule {
  long long modulus = 1;
  long long strand = -1;
  long long bound_constant = 0;  // N, the family size
  std::vector<long long> indices;
};
SingularSchedule build_singular_schedule(const std::vector<ModelOperator>& ops,
                                         int length,
                                         long long budget = Settings{}.scan_budget);
bool validate_schedule(const std::vector<ModelOperator>& ops,
                       const SingularSchedule& s);

// Same construction centered at a nonzero essential point of a single
// operator: |diag(k_m) - lambda| <= 1/m.
SingularSchedule singular_schedule_at(const ModelOperator& op, const Rat& lambda,
                                      int length,
                                      long long budget = Settings{}.scan_budget);

// Range-sum closedness: closed iff H_eps and H_0 differ by finitely
// many indices for some eps > 0.
struct ClosednessReport {
  bool closed = false;
  long long modulus = 1;
  Rat eps = Rat(0);          // half the smallest nonzero strand max-limit
  long long defect_dim = 0;  // |H_eps minus H_0|, finite by the criterion
  IndexSetDesc core;
  IndexSetDesc kernel;
  long long witness_strand = -1;  // not closed: all limits 0 here
  std::string witness_label;      // but this operator does not vanish
};
ClosednessReport check_sum_ranges_closed(const std::vector<ModelOperator>& ops,
                                         long long budget = Settings{}.scan_budget);
ClosednessReport check_range_closed_single(const ModelOperator& op,
                                           long long budget = Settings{}.scan_budget);

// lambda_min of sum B_i B_i* with a sampled quadratic-form cross-check.
struct CoercivityReport {
  double lambda_min = 0.0;
  int samples = 0;
  double min_quadratic = 0.0;
  bool sampled_ok = false;
};
CoercivityReport coercivity_constant(const std::vector<HermitianMatrix>& bs,
                                     int samples = 100, std::uint64_t seed = 0,
                                     const Tolerances& tol = default_tolerances());

// Column space of the stacked [B_1 ... B_n] against the range of
// sum B_i B_i*, by mutual containment of independently computed
// orthonormal bases.
struct RangesEqReport {
  long long ambient = 0;
  long long rank_sum = 0;    // rank of sum B_i B_i*, via eigh
  long long rank_stack = 0;  // rank of the stacked columns, via Gram-Schmidt
  double max_defect = 0.0;   // worst residual of one basis against the other
  bool equal = false;
  std::vector<cdouble> violating;  // residual witness when not equal
};
RangesEqReport corollary_ranges_eq(const std::vector<HermitianMatrix>& bs,
                                   const Tolerances& tol = default_tolerances());

// E_B(R \ [-eps, eps]) E_C(R \ [-delta, delta]) has finite rank when
// BC is compact; the exact index set of the product.
struct Lemma41Report {
  Rat eps = Rat(0);
  Rat delta = Rat(0);
  long long count = 0;
  std::vector<long long> witnesses;
};
Lemma41Report check_projection_product_compact(const ModelOperator& b,
                                               const ModelOperator& c,
                                               const Rat& eps, const Rat& delta,
                                               long long budget = Settings{}.scan_budget);

// Nonzero spectra of sum P_i and of the Gram matrix of the embedding
// x -> (P_1 x, ..., P_n x) must match; the gap of the sum above zero
// is the coercivity constant the closedness argument feeds on.
struct GramGapReport {
  std::vector<double> sum_spectrum;
  std::vector<double> gram_spectrum;
  long long nonzero_sum = 0;
  long long nonzero_gram = 0;
  double max_match_diff = 0.0;
  bool spectra_match_ok = false;
  long long rank_gamma_minus_identity = 0;
  double gap = 0.0;
};
GramGapReport gram_gap(const std::vector<HermitianMatrix>& projections,
                       const Tolerances& tol = default_tolerances());

// sum A_i^2 + mu Q >= mu I with Q the projection onto H_eps and
// mu = eps^2 * delta, where delta is the numeric gram gap of the
// truncated exceedance projections E_{A_i}(R \ [-eps, eps]).  The
// inequality itself is re-verified symbolically index by index.
struct Ineq41Report {
  Rat eps = Rat(0);
  Rat delta = Rat(0);          // exact rational image of the numeric gap
  double delta_numeric = 0.0;  // the gap as computed
  Rat mu = Rat(0);
  int trunc_size = 0;
  bool holds = false;
  long long scanned = 0;
  std::vector<long long> violations;
};
Ineq41Report verify_inequality_41(const std::vector<ModelOperator>& ops,
                                  const Rat& eps, int trunc_size,
                                  long long budget = Settings{}.scan_budget,
                                  const Tolerances& tol = default_tolerances());

// Grouped closedness: per-group range sums closed plus cross-group
// compactness imply the total sum is closed, certified through the
// grouped squares B_p = sum_{i in p} A_i^2.
struct GroupedReport {
  std::vector<ClosednessReport> groups;
  bool all_groups_closed = false;
  std::vector<Rat> group_gaps;  // eps_p with sigma(B_p) disjoint from (0, eps_p)
  Rat common_eps = Rat(0);
  long long route_defect_dim = 0;
  bool closed_by_route = false;
  ClosednessReport flat;  // direct verdict on the flattened family
  bool route_agrees_flat = false;
};
GroupedReport check_grouped_closed(const std::vector<std::vector<ModelOperator>>& groups,
                                   long long budget = Settings{}.scan_budget);

// A schedule singular for b2 at lambda != 0 is singular for b1 at 0
// when b1 b2 is compact: ||b1 e_{k_m}|| -> 0 along the schedule,
// verified on the n-truncation.
struct TransferReport {
  Rat lambda = Rat(0);
  long long n = 0;
  bool product_compact = false;
  bool schedule_valid = false;
  double first_quarter_max = 0.0;
  double last_quarter_max = 0.0;
  bool transferred = false;
};
TransferReport transfer_singular(const ModelOperator& b1, const ModelOperator& b2,
                                 const Rat& lambda, const SingularSchedule& schedule,
                                 long long n);

// delta^2 = eps / (2n) for the n-group argument; exact.
Rat effective_delta_squared(const Rat& eps, int n_groups);

}  // namespace specsum
