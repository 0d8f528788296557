#pragma once

#include <cstdint>
#include <vector>

#include "specsum/numeric/subspace.hpp"
#include "specsum/operator_model.hpp"

namespace specsum {

// One eigenvalue cluster of a truncated spectrum.  A cluster is
// growing when it holds more eigenvalues than the previous truncation
// placed inside its interval; growing clusters approximate essential
// points, isolated ones are discrete spectrum or pollution.
struct Cluster {
  double lo = 0.0;
  double hi = 0.0;
  double center = 0.0;
  long long count = 0;
  bool growing = false;
};

struct ConvergenceStep {
  long long size = 0;
  std::vector<Cluster> clusters;
  double hausdorff = 0.0;  // infinity when no cluster grows
};

struct ConvergenceReport {
  std::vector<long long> sizes;
  std::vector<Rat> essential;  // exact ground truth
  std::vector<ConvergenceStep> steps;
  double cluster_gap = 0.0;  // split threshold used
};

// eigh(truncate(op, n)) along the strictly increasing sizes (at least
// two); clusters split at gaps above Tolerances::cluster_gap; the
// Hausdorff distance compares growing-cluster centers with the exact
// essential points.
ConvergenceReport truncation_spectrum_convergence(
    const ModelOperator& op, const std::vector<long long>& sizes,
    const Tolerances& tol = default_tolerances());

struct WeylReport {
  long long n = 0;
  int rank = 0;
  double s_min = 0.0;  // singular value range of the perturbation
  double s_max = 0.0;
  long long displaced = 0;  // eigenvalues outside their interlacing window
  bool interlacing_ok = false;  // displaced <= rank
  bool essential_unchanged = false;
};

// Adds a random PSD block V diag(s) V* of the given rank to the n x n
// truncation and counts eigenvalues leaving the interlacing windows
// [lambda_k - tau, lambda_{k+rank} + tau]; at most `rank` may.  The
// perturbed ModelOperator keeps the exact essential points.
WeylReport weyl_experiment(const ModelOperator& op, int rank, long long n,
                           std::uint64_t seed,
                           const Tolerances& tol = default_tolerances());

struct NumericCoreReport {
  long long n = 0;
  double eps = 0.0;
  long long dim = 0;
  long long symbolic_count = -1;  // -1 when blocks prevent the cross-check
  bool agrees = false;
  Subspace core;
};

// Numeric H_eps: intersects the truncated spectral projections
// E_{A_i,n}([-eps, eps]).  Block-free families are checked against the
// symbolic epsilon_core restricted to indices k <= n.
NumericCoreReport numeric_epsilon_core(const std::vector<ModelOperator>& ops,
                                       double eps, long long n,
                                       const Tolerances& tol = default_tolerances());

}  // namespace specsum
