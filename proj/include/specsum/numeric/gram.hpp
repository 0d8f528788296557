#pragma once

#include "specsum/numeric/subspace.hpp"

namespace specsum {

// Orthonormal frame of the range of an orthogonal projection.
// Validates P* = P (by type) and ||P^2 - P|| within tolerance.
Subspace range_frame(const HermitianMatrix& p,
                     const Tolerances& tol = default_tolerances());

// Gram matrix of the embedding x -> (P_1 x, ..., P_n x) expressed in
// orthonormal frames of the ranges: block (i, j) = U_i* U_j, diagonal
// blocks exactly the identity.
HermitianMatrix gram_matrix(const std::vector<Subspace>& frames);

double lambda_min(const HermitianMatrix& a,
                  const Tolerances& tol = default_tolerances());

// Smallest eigenvalue above zero_tol; throws when the whole spectrum
// sits below it.
double spectral_gap_above(const HermitianMatrix& a, double zero_tol,
                          const Tolerances& tol = default_tolerances());

}  // namespace specsum
