#include "specsum/lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specsum/rng.hpp"

namespace specsum {

namespace {

std::vector<Cluster> split_clusters(const std::vector<double>& vals, double gap) {
  std::vector<Cluster> out;
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= vals.size(); ++i) {
    if (i < vals.size() && vals[i] - vals[i - 1] <= gap) continue;
    Cluster c;
    c.lo = vals[begin];
    c.hi = vals[i - 1];
    c.count = static_cast<long long>(i - begin);
    double sum = 0.0;
    for (std::size_t t = begin; t < i; ++t) sum += vals[t];
    c.center = sum / static_cast<double>(c.count);
    out.push_back(c);
    begin = i;
  }
  return out;
}

double two_sided_hausdorff(const std::vector<double>& a,
                           const std::vector<double>& b) {
  auto one_way = [](const std::vector<double>& from, const std::vector<double>& to) {
    double worst = 0.0;
    for (double x : from) {
      double best = std::numeric_limits<double>::infinity();
      for (double y : to) best = std::min(best, std::abs(x - y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_way(a, b), one_way(b, a));
}

}  // namespace

ConvergenceReport truncation_spectrum_convergence(const ModelOperator& op,
                                                  const std::vector<long long>& sizes,
                                                  const Tolerances& tol) {
  if (sizes.size() < 2)
    throw Error(ErrorKind::BadDimension, "need at least two truncation sizes");
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i] <= sizes[i - 1])
      throw Error(ErrorKind::BadDimension, "sizes must be strictly increasing");
  op.validate();

  ConvergenceReport rep;
  rep.sizes = sizes;
  rep.cluster_gap = tol.cluster_gap;
  rep.essential = essential_points(op);
  std::vector<double> ess;
  for (const auto& e : rep.essential) ess.push_back(rat_to_double(e));

  std::vector<double> prev;
  for (long long n : sizes) {
    ConvergenceStep step;
    step.size = n;
    std::vector<double> vals = eigh(truncate(op, n), tol).values;
    step.clusters = split_clusters(vals, tol.cluster_gap);
    std::vector<double> centers;
    for (auto& c : step.clusters) {
      if (prev.empty()) {
        c.growing = c.count >= 2;
      } else {
        long long inside = 0;
        for (double v : prev)
          if (v >= c.lo - tol.cluster_gap && v <= c.hi + tol.cluster_gap) ++inside;
        c.growing = c.count > inside;
      }
      if (c.growing) centers.push_back(c.center);
    }
    step.hausdorff = centers.empty()
                         ? std::numeric_limits<double>::infinity()
                         : two_sided_hausdorff(centers, ess);
    rep.steps.push_back(std::move(step));
    prev = std::move(vals);
  }
  return rep;
}

WeylReport weyl_experiment(const ModelOperator& op, int rank, long long n,
                           std::uint64_t seed, const Tolerances& tol) {
  if (rank < 0 || n < 1 || rank > n)
    throw Error(ErrorKind::BadDimension, "rank must lie in [0, n]");
  op.validate();
  WeylReport rep;
  rep.n = n;
  rep.rank = rank;

  HermitianMatrix base = truncate(op, n);
  std::vector<double> lam = eigh(base, tol).values;
  if (rank == 0) {
    rep.interlacing_ok = true;
    rep.essential_unchanged = true;
    return rep;
  }

  Rng rng(seed);
  Matrix g(n, rank);
  for (auto& z : g.a) z = cdouble(rng.gaussian(), rng.gaussian());
  Matrix v = orthonormal_columns(g, 1e-12);
  if (v.cols != rank)
    throw Error(ErrorKind::ConvergenceFailure, "random frame lost rank");
  std::vector<double> s(rank);
  rep.s_min = std::numeric_limits<double>::infinity();
  for (auto& x : s) {
    x = 0.5 + rng.uniform();
    rep.s_min = std::min(rep.s_min, x);
    rep.s_max = std::max(rep.s_max, x);
  }
  Matrix p(n, n);
  for (long long i = 0; i < n; ++i)
    for (long long j = 0; j < n; ++j) {
      cdouble acc = 0.0;
      for (int c = 0; c < rank; ++c)
        acc += v.at(i, c) * s[c] * std::conj(v.at(j, c));
      p.at(i, j) = acc;
    }

  HermitianMatrix pert = HermitianMatrix::from_matrix(base.full() + p, 1e-10);
  std::vector<double> mu = eigh(pert, tol).values;
  double tau = tol.rank_abs * std::max(1.0, pert.fro());
  for (long long k = 0; k < n; ++k) {
    double lo = lam[k] - tau;
    double hi = lam[std::min(k + rank, n - 1)] + tau;
    if (mu[k] < lo || mu[k] > hi) ++rep.displaced;
  }
  rep.interlacing_ok = rep.displaced <= rank;

  // Exact invariance of the essential points under the finite block.
  ModelOperator shifted = op;
  HermitianRational exact(n);
  for (long long i = 0; i < n; ++i)
    for (long long j = i; j < n; ++j) {
      cdouble z = (p.at(i, j) + std::conj(p.at(j, i))) / 2.0;
      exact.set(i, j, RatC(Rat(z.real()), Rat(z.imag())));
    }
  shifted.block = op.has_block() ? op.block.padded(std::max(op.block.dim(), n)) +
                                       exact.padded(std::max(op.block.dim(), n))
                                 : exact;
  rep.essential_unchanged = essential_points(shifted) == essential_points(op);
  if (!rep.essential_unchanged)
    throw Error(ErrorKind::OracleMismatch,
                "finite block moved the essential points");
  return rep;
}

NumericCoreReport numeric_epsilon_core(const std::vector<ModelOperator>& ops,
                                       double eps, long long n,
                                       const Tolerances& tol) {
  if (ops.empty()) throw Error(ErrorKind::BadOperator, "empty family");
  if (!(eps > 0)) throw Error(ErrorKind::BadSequence, "eps must be positive");
  if (n < 1) throw Error(ErrorKind::BadDimension, "truncation must be >= 1");
  NumericCoreReport rep;
  rep.n = n;
  rep.eps = eps;
  std::vector<Subspace> parts;
  bool block_free = true;
  for (const auto& op : ops) {
    op.validate();
    if (op.has_block()) block_free = false;
    parts.push_back(spectral_projection(truncate(op, n), -eps, eps, tol));
  }
  rep.core = subspace_intersection(parts, tol);
  rep.dim = rep.core.dim();
  if (!block_free) {
    rep.agrees = true;  // no symbolic ground truth under blocks
    return rep;
  }
  CoreReport sym = epsilon_core(ops, Rat(eps));
  long long count = 0;
  for (long long k = 1; k <= n; ++k)
    if (sym.indices.contains(k)) ++count;
  rep.symbolic_count = count;
  rep.agrees = rep.dim == count;
  if (!rep.agrees)
    throw Error(ErrorKind::OracleMismatch,
                "numeric core dimension disagrees with the symbolic count");
  return rep;
}

}  // namespace specsum
