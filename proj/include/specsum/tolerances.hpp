#pragma once

#include <cmath>
#include <cstdint>

namespace specsum {

// Central numeric policy.  Every floating-point verdict in the library
// derives its thresholds from this record and reports echo it, so a
// result can be re-checked without guessing which cutoff was in force.
struct Tolerances {
  // Relative off-diagonal target for eigensolver convergence.
  double eig_converge = 1e-14;
  // Relative residual bound an eigendecomposition must meet; exceeding
  // it after the sweep budget is a ConvergenceFailure.
  double eig_residual = 1e-10;
  int sweep_budget = 30;
  // Spectral-window endpoints closer than gap_rel * norm to an
  // eigenvalue (but not an exact hit) are ambiguous.
  double gap_rel = 1e-8;
  // Exact-hit band: eigenvalues within eq_rel * norm of an endpoint
  // count as lying on it.
  double eq_rel = 1e-12;
  // Singular values below rank_abs are treated as zero when deciding
  // ranks, intersections and containments of subspaces.
  double rank_abs = 1e-8;
  // Orthonormality defect allowed for a frame, scaled by sqrt(dim).
  double orth_rel = 1e-12;
  // Residual allowed when checking that a matrix is a projection.
  double proj_residual = 1e-10;
  // Two spectra "match" when paired eigenvalues differ by less.
  double spectra_match = 1e-9;
  // Eigenvalues below zero_tol are treated as zero in gap extraction.
  double zero_tol = 1e-8;
  // Gap separating eigenvalue clusters in truncation studies.
  double cluster_gap = 1e-3;
  double orth(int ambient_dim) const {
    return orth_rel * std::sqrt(static_cast<double>(ambient_dim));
  }
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t;
  return t;
}

// Runtime knobs that are settings rather than tolerances.
struct Settings {
  std::uint64_t seed = 0;
  int trunc_size = 500;
  long long scan_budget = 2000000;
};

}  // namespace specsum
