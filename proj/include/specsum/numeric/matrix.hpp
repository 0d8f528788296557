#pragma once

#include <complex>
#include <vector>

#include "specsum/operator_model.hpp"
#include "specsum/tolerances.hpp"

namespace specsum {

using cdouble = std::complex<double>;

// Dense complex matrix, row-major.
struct Matrix {
  long long rows = 0;
  long long cols = 0;
  std::vector<cdouble> a;

  Matrix() = default;
  Matrix(long long r, long long c) : rows(r), cols(c), a(r * c) {}

  cdouble& at(long long i, long long j) { return a[i * cols + j]; }
  const cdouble& at(long long i, long long j) const { return a[i * cols + j]; }

  static Matrix identity(long long n);
};

Matrix adjoint(const Matrix& m);
double fro_norm(const Matrix& m);
Matrix operator*(const Matrix& a, const Matrix& b);  // delegates to matmul
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

// OpenMP kernel and its serial reference.  Both accumulate each output
// entry in the same k-order, so results agree bitwise.
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix matmul_reference(const Matrix& a, const Matrix& b);

// Dense Hermitian matrix.  Writes keep the conjugate mirror intact and
// the diagonal real, so stored data is Hermitian by construction.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(long long n) : n_(n), a_(n * n) {}

  long long dim() const { return n_; }
  const cdouble& at(long long i, long long j) const { return a_[i * n_ + j]; }
  void set(long long i, long long j, cdouble z);

  double fro() const;
  Matrix full() const;

  // Validates near-Hermitian input (defect within tol * norm) and
  // symmetrizes it exactly.
  static HermitianMatrix from_matrix(const Matrix& m, double rel_tol = 1e-10);

  friend bool operator==(const HermitianMatrix&, const HermitianMatrix&) = default;

 private:
  long long n_ = 0;
  std::vector<cdouble> a_;
};

HermitianMatrix to_numeric(const HermitianRational& m);

// Leading n x n corner of a model operator in doubles.
HermitianMatrix truncate(const ModelOperator& op, long long n);

}  // namespace specsum
