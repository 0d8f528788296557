#include "specsum/numeric/eigh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace specsum {

namespace {

double offdiag_norm(const Matrix& a) {
  double s = 0.0;
  for (long long i = 0; i < a.rows; ++i)
    for (long long j = 0; j < a.cols; ++j)
      if (i != j) s += std::norm(a.at(i, j));
  return std::sqrt(s);
}

struct Rotation {
  long long p = -1, q = -1;
  cdouble u11, u12;
  double u21 = 0.0, u22 = 1.0;  // real by construction
  bool active = false;
};

// 2x2 annihilating rotation for the Hermitian block at (p, q):
// U = diag(phase, 1) * [[c, s], [-s, c]] with b = |b| * phase.
Rotation make_rotation(const Matrix& a, long long p, long long q) {
  Rotation r;
  r.p = p;
  r.q = q;
  cdouble apq = a.at(p, q);
  double beta = std::abs(apq);
  if (beta == 0.0) return r;
  cdouble phase = apq / beta;
  double app = a.at(p, p).real();
  double aqq = a.at(q, q).real();
  double tau = (aqq - app) / (2.0 * beta);
  double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  double c = 1.0 / std::sqrt(1.0 + t * t);
  double s = t * c;
  r.u11 = c * phase;
  r.u12 = s * phase;
  r.u21 = -s;
  r.u22 = c;
  r.active = true;
  return r;
}

void apply_rows(Matrix& a, const Rotation& r, std::vector<cdouble>& tmp) {
  const long long n = a.cols;
  for (long long k = 0; k < n; ++k) tmp[k] = a.at(r.p, k);
  cdouble cu11 = std::conj(r.u11), cu12 = std::conj(r.u12);
  for (long long k = 0; k < n; ++k) {
    cdouble old_q = a.at(r.q, k);
    a.at(r.p, k) = cu11 * tmp[k] + r.u21 * old_q;
    a.at(r.q, k) = cu12 * tmp[k] + r.u22 * old_q;
  }
}

void apply_cols(Matrix& a, const Rotation& r, std::vector<cdouble>& tmp) {
  const long long n = a.rows;
  for (long long i = 0; i < n; ++i) tmp[i] = a.at(i, r.p);
  for (long long i = 0; i < n; ++i) {
    cdouble old_q = a.at(i, r.q);
    a.at(i, r.p) = tmp[i] * r.u11 + old_q * r.u21;
    a.at(i, r.q) = tmp[i] * r.u12 + old_q * r.u22;
  }
}

EigenDecomposition finish(Matrix a, Matrix v, int sweeps, double off) {
  const long long n = a.rows;
  std::vector<long long> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](long long x, long long y) {
    return a.at(x, x).real() < a.at(y, y).real();
  });
  EigenDecomposition d;
  d.values.resize(n);
  d.vectors = Matrix(n, n);
  for (long long j = 0; j < n; ++j) {
    d.values[j] = a.at(order[j], order[j]).real();
    for (long long i = 0; i < n; ++i) d.vectors.at(i, j) = v.at(i, order[j]);
  }
  d.sweeps = sweeps;
  d.off_final = off;
  return d;
}

}  // namespace

EigenDecomposition eigh(const HermitianMatrix& h, const Tolerances& tol) {
  const long long n = h.dim();
  Matrix a = h.full();
  Matrix v = Matrix::identity(n);
  if (n <= 1) return finish(std::move(a), std::move(v), 0, 0.0);
  const double scale = h.fro();
  if (scale == 0.0) return finish(std::move(a), std::move(v), 0, 0.0);

  // Round-robin schedule: N slots (dummy pads odd n), N-1 rounds of
  // disjoint pairs covering every (p, q) once per sweep.
  const long long slots = (n % 2 == 0) ? n : n + 1;
  const long long rounds = slots - 1;
  const long long pairs = slots / 2;
  std::vector<Rotation> rots(pairs);
  std::vector<std::vector<cdouble>> scratch(pairs, std::vector<cdouble>(n));

  double off = offdiag_norm(a);
  int sweep = 0;
  for (; sweep < tol.sweep_budget && off > tol.eig_converge * scale; ++sweep) {
    for (long long t = 0; t < rounds; ++t) {
      auto rotated = [&](long long x) { return 1 + (t + x) % (slots - 1); };
      for (long long i = 0; i < pairs; ++i) {
        long long p = (i == 0) ? 0 : rotated(i - 1);
        long long q = rotated(slots - 1 - i - 1);
        if (p >= n || q >= n) {
          rots[i] = Rotation{};
          continue;
        }
        if (p > q) std::swap(p, q);
        rots[i] = make_rotation(a, p, q);
      }
#pragma omp parallel for schedule(static)
      for (long long i = 0; i < pairs; ++i)
        if (rots[i].active) apply_rows(a, rots[i], scratch[i]);
#pragma omp parallel for schedule(static)
      for (long long i = 0; i < pairs; ++i)
        if (rots[i].active) {
          apply_cols(a, rots[i], scratch[i]);
          apply_cols(v, rots[i], scratch[i]);
        }
    }
    off = offdiag_norm(a);
  }
  if (off > tol.eig_residual * scale)
    throw Error(ErrorKind::ConvergenceFailure,
                "Jacobi sweep budget exhausted at off-diagonal " + std::to_string(off));
  return finish(std::move(a), std::move(v), sweep, off);
}

EigenDecomposition eigh_reference(const HermitianMatrix& h, const Tolerances& tol) {
  const long long n = h.dim();
  Matrix a = h.full();
  Matrix v = Matrix::identity(n);
  if (n <= 1) return finish(std::move(a), std::move(v), 0, 0.0);
  const double scale = h.fro();
  if (scale == 0.0) return finish(std::move(a), std::move(v), 0, 0.0);

  std::vector<cdouble> tmp(n);
  double off = offdiag_norm(a);
  int sweep = 0;
  for (; sweep < tol.sweep_budget && off > tol.eig_converge * scale; ++sweep) {
    for (long long p = 0; p + 1 < n; ++p)
      for (long long q = p + 1; q < n; ++q) {
        Rotation r = make_rotation(a, p, q);
        if (!r.active) continue;
        apply_rows(a, r, tmp);
        apply_cols(a, r, tmp);
        apply_cols(v, r, tmp);
      }
    off = offdiag_norm(a);
  }
  if (off > tol.eig_residual * scale)
    throw Error(ErrorKind::ConvergenceFailure,
                "Jacobi sweep budget exhausted at off-diagonal " + std::to_string(off));
  return finish(std::move(a), std::move(v), sweep, off);
}

double eig_residual(const HermitianMatrix& a, const EigenDecomposition& d) {
  Matrix av = matmul(a.full(), d.vectors);
  Matrix vl = d.vectors;
  for (long long j = 0; j < vl.cols; ++j)
    for (long long i = 0; i < vl.rows; ++i) vl.at(i, j) *= d.values[j];
  return fro_norm(av - vl);
}

double orth_defect(const Matrix& v) {
  Matrix g = matmul(adjoint(v), v);
  return fro_norm(g - Matrix::identity(v.cols));
}

}  // namespace specsum
