#pragma once

#include <string>
#include <vector>

#include "specsum/sequence.hpp"

namespace specsum {

// Exact Hermitian matrix over the Gaussian rationals.
class HermitianRational {
 public:
  HermitianRational() = default;
  explicit HermitianRational(long long n) : n_(n), a_(n * n) {}

  long long dim() const { return n_; }
  bool empty() const { return n_ == 0; }
  const RatC& at(long long i, long long j) const { return a_[i * n_ + j]; }
  // Writes (i, j) and the conjugate mirror; diagonal entries must be real.
  void set(long long i, long long j, const RatC& z);

  HermitianRational padded(long long n) const;
  friend HermitianRational operator+(const HermitianRational& a,
                                     const HermitianRational& b);
  // A*A, Hermitian again since A is.
  HermitianRational squared() const;

  bool is_zero() const;

 private:
  long long n_ = 0;
  std::vector<RatC> a_;
};

// Self-adjoint model operator: the diagonal sequence, plus an optional
// finite exact Hermitian block added onto the leading corner.
struct ModelOperator {
  std::string label;
  SymbolicSequence diag;
  HermitianRational block;

  bool has_block() const { return !block.empty(); }
  void validate() const;
};

// Diagonals seq_add-ed, blocks padded to the largest size and added.
ModelOperator op_sum(const std::vector<ModelOperator>& ops);

// Compact <=> the diagonal tends to zero (finite blocks are compact).
bool is_compact(const ModelOperator& op);
// The product of two diagonal-plus-block operators is compact iff the
// pointwise product of the diagonals tends to zero.
bool product_is_compact(const ModelOperator& a, const ModelOperator& b);

// Exact spectral picture.  The block never moves essential_points
// (finite rank), and zero_accumulation flags whether 0 is a limit of
// nonzero attained diagonal values.
struct SpectrumInfo {
  std::vector<Rat> essential_points;    // sorted, distinct
  std::vector<std::string> strand_laws; // rendered per-strand value laws
  bool zero_accumulation = false;
};

SpectrumInfo essential_spectrum(const ModelOperator& op);
std::vector<Rat> essential_points(const ModelOperator& op);

// Joint spectral core around zero as an exact index set.
struct CoreReport {
  Rat eps;
  IndexSetDesc indices;

  bool finite() const { return indices.is_finite(); }
  long long finite_dim() const { return indices.finite_count(); }
};

// H_eps for eps > 0; blocks are refused (their spectral windows are
// not symbolically computable; the numeric lab covers that case).
CoreReport epsilon_core(const std::vector<ModelOperator>& ops, const Rat& eps,
                        long long budget = Settings{}.scan_budget);
// H_0, the joint kernel; block-free families only.
CoreReport kernel_core(const std::vector<ModelOperator>& ops,
                       long long budget = Settings{}.scan_budget);

// Leading n x n corner, exact; requires n >= block size.  Throws when
// a diagonal value is irrational; the numeric truncation lives in the
// numeric layer.
HermitianRational truncate_exact(const ModelOperator& op, long long n);

}  // namespace specsum
