#include "specsum/numeric/matrix.hpp"

#include <cmath>

namespace specsum {

Matrix Matrix::identity(long long n) {
  Matrix m(n, n);
  for (long long i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

Matrix adjoint(const Matrix& m) {
  Matrix out(m.cols, m.rows);
  for (long long i = 0; i < m.rows; ++i)
    for (long long j = 0; j < m.cols; ++j) out.at(j, i) = std::conj(m.at(i, j));
  return out;
}

double fro_norm(const Matrix& m) {
  double s = 0.0;
  for (const auto& z : m.a) s += std::norm(z);
  return std::sqrt(s);
}

static void check_mul_dims(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) throw Error(ErrorKind::BadDimension, "matmul shape mismatch");
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  check_mul_dims(a, b);
  Matrix out(a.rows, b.cols);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < a.rows; ++i)
    for (long long j = 0; j < b.cols; ++j) {
      cdouble acc = 0.0;
      for (long long k = 0; k < a.cols; ++k) acc += a.at(i, k) * b.at(k, j);
      out.at(i, j) = acc;
    }
  return out;
}

Matrix matmul_reference(const Matrix& a, const Matrix& b) {
  check_mul_dims(a, b);
  Matrix out(a.rows, b.cols);
  for (long long i = 0; i < a.rows; ++i)
    for (long long j = 0; j < b.cols; ++j) {
      cdouble acc = 0.0;
      for (long long k = 0; k < a.cols; ++k) acc += a.at(i, k) * b.at(k, j);
      out.at(i, j) = acc;
    }
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) { return matmul(a, b); }

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw Error(ErrorKind::BadDimension, "matrix sum shape mismatch");
  Matrix out(a.rows, a.cols);
  for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] = a.a[i] + b.a[i];
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw Error(ErrorKind::BadDimension, "matrix difference shape mismatch");
  Matrix out(a.rows, a.cols);
  for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] = a.a[i] - b.a[i];
  return out;
}

void HermitianMatrix::set(long long i, long long j, cdouble z) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_)
    throw Error(ErrorKind::BadDimension, "entry out of range");
  if (i == j) z = cdouble(z.real(), 0.0);
  a_[i * n_ + j] = z;
  a_[j * n_ + i] = std::conj(z);
}

double HermitianMatrix::fro() const {
  double s = 0.0;
  for (const auto& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

Matrix HermitianMatrix::full() const {
  Matrix m(n_, n_);
  m.a = a_;
  return m;
}

HermitianMatrix HermitianMatrix::from_matrix(const Matrix& m, double rel_tol) {
  if (m.rows != m.cols) throw Error(ErrorKind::BadDimension, "not square");
  double defect = fro_norm(m - adjoint(m));
  double scale = fro_norm(m);
  if (defect > rel_tol * std::max(scale, 1.0))
    throw Error(ErrorKind::BadOperator, "matrix is not Hermitian within tolerance");
  HermitianMatrix h(m.rows);
  for (long long i = 0; i < m.rows; ++i)
    for (long long j = i; j < m.cols; ++j)
      h.set(i, j, 0.5 * (m.at(i, j) + std::conj(m.at(j, i))));
  return h;
}

HermitianMatrix to_numeric(const HermitianRational& m) {
  HermitianMatrix out(m.dim());
  for (long long i = 0; i < m.dim(); ++i)
    for (long long j = i; j < m.dim(); ++j) {
      const RatC& z = m.at(i, j);
      out.set(i, j, cdouble(rat_to_double(z.re), rat_to_double(z.im)));
    }
  return out;
}

HermitianMatrix truncate(const ModelOperator& op, long long n) {
  op.validate();
  long long nb = op.block.dim();
  if (n < nb)
    throw Error(ErrorKind::BadDimension, "truncation smaller than the block");
  HermitianMatrix out(n);
  for (long long i = 0; i < n; ++i) out.set(i, i, seq_eval_f(op.diag, i + 1));
  // Block adds onto the leading corner.
  for (long long i = 0; i < nb; ++i)
    for (long long j = i; j < nb; ++j) {
      const RatC& z = op.block.at(i, j);
      cdouble add(rat_to_double(z.re), rat_to_double(z.im));
      out.set(i, j, out.at(i, j) + add);
    }
  return out;
}

}  // namespace specsum
