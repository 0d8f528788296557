#pragma once

#include "specsum/numeric/eigh.hpp"

namespace specsum {

// Subspace given by an orthonormal column frame.
struct Subspace {
  Matrix frame;

  long long ambient() const { return frame.rows; }
  long long dim() const { return frame.cols; }
  // U U*.
  Matrix projector() const;
};

// Span of eigenvectors with eigenvalues in [lo, hi].  Eigenvalues
// within eq_rel * norm of an endpoint count as on it; anything closer
// than gap_rel * norm but not an exact hit raises AmbiguousBoundary.
Subspace spectral_projection(const HermitianMatrix& a, double lo, double hi,
                             const Tolerances& tol = default_tolerances());

// Intersection of subspaces, computed from the lowest eigenvectors of
// sum(I - U_i U_i*).
Subspace subspace_intersection(const std::vector<Subspace>& subs,
                               const Tolerances& tol = default_tolerances());

// Principal angles in radians, ascending; min(dim, dim) values.
std::vector<double> principal_angles(const Subspace& u, const Subspace& v,
                                     const Tolerances& tol = default_tolerances());

// Orthonormal basis of the column space by twice-reorthogonalized
// Gram-Schmidt; columns whose residual falls below drop_tol are
// dependent and skipped.
Matrix orthonormal_columns(const Matrix& m, double drop_tol);

}  // namespace specsum
