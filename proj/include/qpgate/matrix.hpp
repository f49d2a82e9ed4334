#pragma once

#include <cstddef>
#include <vector>

#include "qpgate/types.hpp"

namespace qpg {

/// Dense row-major complex matrix. Entry (i, j) sits at i * cols + j;
/// this index convention is shared by every operator in the project.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(const std::vector<cplx>& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<cplx>& data() const { return data_; }
  std::vector<cplx>& data() { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx scalar);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx scalar, ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<cplx> operator*(const ComplexMatrix& m, const std::vector<cplx>& v);

ComplexMatrix adjoint(const ComplexMatrix& m);
cplx trace(const ComplexMatrix& m);
double max_abs(const ComplexMatrix& m);
double frobenius_norm(const ComplexMatrix& m);

/// max|A(i,j) - conj(A(j,i))| <= rel_tol * max|A| (zero matrix counts as
/// Hermitian).
bool is_hermitian(const ComplexMatrix& m, double rel_tol = 1e-12);

/// Kronecker product: result[(i*b.rows + k)][(j*b.cols + l)] = a(i,j) * b(k,l).
/// Throws DimensionError once either result axis exceeds max_dim.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   std::size_t max_dim = kMaxStateDim);

/// Truncated bosonic annihilation operator on a (cutoff+1)-dimensional Fock
/// space: a[n-1][n] = sqrt(n). Requires cutoff >= 1.
ComplexMatrix annihilation(int cutoff);

/// All eigenvalues of a Hermitian matrix (cyclic complex Jacobi), ascending.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Eigenvalues (ascending) and matching unitary of eigenvector columns:
/// m * V = V * diag(values).
struct EigenSystem {
  std::vector<double> values;
  ComplexMatrix vectors;
};
EigenSystem hermitian_eigensystem(const ComplexMatrix& m);

}  // namespace qpg
