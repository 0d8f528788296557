#include "specsum/numeric/subspace.hpp"

#include <algorithm>
#include <cmath>

namespace specsum {

Matrix Subspace::projector() const { return matmul(frame, adjoint(frame)); }

Subspace spectral_projection(const HermitianMatrix& a, double lo, double hi,
                             const Tolerances& tol) {
  if (lo > hi) throw Error(ErrorKind::BadDimension, "empty spectral window");
  EigenDecomposition d = eigh(a, tol);
  const double scale = a.fro();
  const double eq = tol.eq_rel * scale;
  const double gap = tol.gap_rel * scale;
  std::vector<long long> picked;
  for (long long j = 0; j < static_cast<long long>(d.values.size()); ++j) {
    double v = d.values[j];
    for (double edge : {lo, hi}) {
      double dist = std::abs(v - edge);
      if (dist > eq && dist < gap)
        throw Error(ErrorKind::AmbiguousBoundary,
                    "eigenvalue " + std::to_string(v) + " hugs window edge " +
                        std::to_string(edge));
    }
    if (v >= lo - eq && v <= hi + eq) picked.push_back(j);
  }
  Subspace s;
  s.frame = Matrix(a.dim(), static_cast<long long>(picked.size()));
  for (long long c = 0; c < static_cast<long long>(picked.size()); ++c)
    for (long long i = 0; i < a.dim(); ++i)
      s.frame.at(i, c) = d.vectors.at(i, picked[c]);
  return s;
}

Subspace subspace_intersection(const std::vector<Subspace>& subs,
                               const Tolerances& tol) {
  if (subs.empty()) throw Error(ErrorKind::BadDimension, "empty intersection");
  const long long n = subs.front().ambient();
  for (const auto& s : subs)
    if (s.ambient() != n)
      throw Error(ErrorKind::BadDimension, "ambient dimension mismatch");
  Matrix t(n, n);
  for (const auto& s : subs) {
    Matrix c = Matrix::identity(n) - s.projector();
    t = t + c;
  }
  HermitianMatrix h = HermitianMatrix::from_matrix(t, 1e-10);
  EigenDecomposition d = eigh(h, tol);
  std::vector<long long> picked;
  for (long long j = 0; j < n; ++j)
    if (d.values[j] < tol.rank_abs) picked.push_back(j);
  Subspace out;
  out.frame = Matrix(n, static_cast<long long>(picked.size()));
  for (long long c = 0; c < static_cast<long long>(picked.size()); ++c)
    for (long long i = 0; i < n; ++i)
      out.frame.at(i, c) = d.vectors.at(i, picked[c]);
  return out;
}

Matrix orthonormal_columns(const Matrix& m, double drop_tol) {
  std::vector<std::vector<cdouble>> basis;
  for (long long c = 0; c < m.cols; ++c) {
    std::vector<cdouble> v(m.rows);
    for (long long i = 0; i < m.rows; ++i) v[i] = m.at(i, c);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) {
        cdouble coef = 0.0;
        for (long long i = 0; i < m.rows; ++i) coef += std::conj(q[i]) * v[i];
        for (long long i = 0; i < m.rows; ++i) v[i] -= coef * q[i];
      }
    double norm = 0.0;
    for (const auto& z : v) norm += std::norm(z);
    norm = std::sqrt(norm);
    if (norm <= drop_tol) continue;
    for (auto& z : v) z /= norm;
    basis.push_back(std::move(v));
  }
  Matrix out(m.rows, static_cast<long long>(basis.size()));
  for (long long c = 0; c < out.cols; ++c)
    for (long long i = 0; i < m.rows; ++i) out.at(i, c) = basis[c][i];
  return out;
}

std::vector<double> principal_angles(const Subspace& u, const Subspace& v,
                                     const Tolerances& tol) {
  if (u.ambient() != v.ambient())
    throw Error(ErrorKind::BadDimension, "ambient dimension mismatch");
  long long count = std::min(u.dim(), v.dim());
  if (count == 0) return {};
  Matrix m = matmul(adjoint(u.frame), v.frame);
  Matrix g = matmul(adjoint(m), m);
  HermitianMatrix h = HermitianMatrix::from_matrix(g, 1e-10);
  EigenDecomposition d = eigh(h, tol);
  // Squared cosines, descending; clamp eigensolver fuzz into [0, 1].
  std::vector<double> angles;
  for (long long i = 0; i < count; ++i) {
    double lam = d.values[d.values.size() - 1 - i];
    lam = std::clamp(lam, 0.0, 1.0);
    angles.push_back(std::acos(std::sqrt(lam)));
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

}  // namespace specsum
