#pragma once

#include "specsum/numeric/matrix.hpp"

namespace specsum {

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column j belongs to values[j]
  int sweeps = 0;
  double off_final = 0.0;
};

// Complex Jacobi diagonalization, round-robin ordering with two-phase
// application per round.  Rotations within a round act on disjoint
// index pairs, so row and column phases parallelize; the result does
// not depend on the number of OpenMP threads.
EigenDecomposition eigh(const HermitianMatrix& a,
                        const Tolerances& tol = default_tolerances());

// Sequential cyclic-by-rows Jacobi kept as an independent reference
// for the parallel kernel.
EigenDecomposition eigh_reference(const HermitianMatrix& a,
                                  const Tolerances& tol = default_tolerances());

// ||A V - V diag(values)||_F, for validating a decomposition.
double eig_residual(const HermitianMatrix& a, const EigenDecomposition& d);
// ||V* V - I||_F.
double orth_defect(const Matrix& v);

}  // namespace specsum
