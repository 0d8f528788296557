#include "specsum/numeric/gram.hpp"

#include <algorithm>
#include <cmath>

namespace specsum {

Subspace range_frame(const HermitianMatrix& p, const Tolerances& tol) {
  Matrix full = p.full();
  double defect = fro_norm(matmul(full, full) - full);
  if (defect > tol.proj_residual * std::max(1.0, p.fro()))
    throw Error(ErrorKind::NotAProjection,
                "P^2 - P has norm " + std::to_string(defect));
  EigenDecomposition d = eigh(p, tol);
  std::vector<long long> picked;
  for (long long j = 0; j < p.dim(); ++j)
    if (d.values[j] > 0.5) picked.push_back(j);
  Subspace s;
  s.frame = Matrix(p.dim(), static_cast<long long>(picked.size()));
  for (long long c = 0; c < static_cast<long long>(picked.size()); ++c)
    for (long long i = 0; i < p.dim(); ++i)
      s.frame.at(i, c) = d.vectors.at(i, picked[c]);
  return s;
}

HermitianMatrix gram_matrix(const std::vector<Subspace>& frames) {
  long long total = 0;
  for (const auto& f : frames) total += f.dim();
  HermitianMatrix g(total);
  long long row0 = 0;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    for (long long d = 0; d < frames[i].dim(); ++d) g.set(row0 + d, row0 + d, 1.0);
    long long col0 = row0 + frames[i].dim();
    for (std::size_t j = i + 1; j < frames.size(); ++j) {
      Matrix block = matmul(adjoint(frames[i].frame), frames[j].frame);
      for (long long r = 0; r < block.rows; ++r)
        for (long long c = 0; c < block.cols; ++c)
          g.set(row0 + r, col0 + c, block.at(r, c));
      col0 += frames[j].dim();
    }
    row0 += frames[i].dim();
  }
  return g;
}

double lambda_min(const HermitianMatrix& a, const Tolerances& tol) {
  if (a.dim() == 0) throw Error(ErrorKind::BadDimension, "empty matrix");
  return eigh(a, tol).values.front();
}

double spectral_gap_above(const HermitianMatrix& a, double zero_tol,
                          const Tolerances& tol) {
  EigenDecomposition d = eigh(a, tol);
  for (double v : d.values)
    if (v > zero_tol) return v;
  throw Error(ErrorKind::BadOperator, "no spectrum above zero threshold");
}

}  // namespace specsum
