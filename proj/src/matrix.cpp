#include "qpgate/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace qpg {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {
  if (rows == 0 || cols == 0) {
    throw DimensionError("matrix dimensions must be positive");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cplx>& entries) {
  ComplexMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw DimensionError("matrix shape mismatch in addition");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw DimensionError("matrix shape mismatch in subtraction");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scalar) {
  for (auto& x : data_) x *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
  a += b;
  return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
  a -= b;
  return a;
}

ComplexMatrix operator*(cplx scalar, ComplexMatrix m) {
  m *= scalar;
  return m;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matrix shape mismatch in product");
  }
  ComplexMatrix c(a.rows(), b.cols());
  const std::size_t n = a.rows(), m = a.cols(), p = b.cols();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < p; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

std::vector<cplx> operator*(const ComplexMatrix& m, const std::vector<cplx>& v) {
  if (m.cols() != v.size()) {
    throw DimensionError("matrix/vector shape mismatch");
  }
  std::vector<cplx> out(m.rows(), cplx{0.0, 0.0});
  for (std::size_t i = 0; i < m.rows(); ++i) {
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
  }
  return out;
}

cplx trace(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("trace of non-square matrix");
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < m.rows(); ++i) acc += m(i, i);
  return acc;
}

double max_abs(const ComplexMatrix& m) {
  double best = 0.0;
  for (const auto& x : m.data()) best = std::max(best, std::abs(x));
  return best;
}

double frobenius_norm(const ComplexMatrix& m) {
  double acc = 0.0;
  for (const auto& x : m.data()) acc += std::norm(x);
  return std::sqrt(acc);
}

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = max_abs(m);
  if (scale == 0.0) return true;
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i; j < m.cols(); ++j) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst <= rel_tol * scale;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   std::size_t max_dim) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (a.rows() == 0 || b.rows() == 0) {
    throw DimensionError("kron of empty matrix");
  }
  if (rows > max_dim || cols > max_dim) {
    throw DimensionError("dimension limit exceeded");
  }
  ComplexMatrix c(rows, cols);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx{0.0, 0.0}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
      }
    }
  }
  return c;
}

ComplexMatrix annihilation(int cutoff) {
  if (cutoff < 1) {
    throw DimensionError("cutoff too small to represent coupling");
  }
  ComplexMatrix a(static_cast<std::size_t>(cutoff) + 1,
                  static_cast<std::size_t>(cutoff) + 1);
  for (int n = 1; n <= cutoff; ++n) {
    a(static_cast<std::size_t>(n - 1), static_cast<std::size_t>(n)) =
        std::sqrt(static_cast<double>(n));
  }
  return a;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  return hermitian_eigensystem(m).values;
}

EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("eigenvalues of non-square matrix");
  }
  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  ComplexMatrix v = ComplexMatrix::identity(n);
  // Symmetrize round-off so diagonals are treated as real.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
    a(i, i) = cplx{a(i, i).real(), 0.0};
  }

  auto off_norm = [&]() {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) acc += std::norm(a(i, j));
    }
    return std::sqrt(acc);
  };

  const double scale = std::max(frobenius_norm(a), 1e-300);
  const int max_sweeps = 60;
  for (int sweep = 0; sweep < max_sweeps && off_norm() > 1e-14 * scale; ++sweep) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-300) continue;
        const cplx phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Real Jacobi rotation on the phase-aligned 2x2 block.
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0)
                             ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                             : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx sp = s * phase;  // complex rotation entry
        // Columns: [col_p, col_q] <- [c*col_p - conj(sp)*col_q, sp*col_p + c*col_q]
        for (std::size_t i = 0; i < n; ++i) {
          const cplx aip = a(i, p);
          const cplx aiq = a(i, q);
          a(i, p) = c * aip - std::conj(sp) * aiq;
          a(i, q) = sp * aip + c * aiq;
          const cplx vip = v(i, p);
          const cplx viq = v(i, q);
          v(i, p) = c * vip - std::conj(sp) * viq;
          v(i, q) = sp * vip + c * viq;
        }
        // Rows (conjugate transpose of the same rotation).
        for (std::size_t j = 0; j < n; ++j) {
          const cplx apj = a(p, j);
          const cplx aqj = a(q, j);
          a(p, j) = c * apj - sp * aqj;
          a(q, j) = std::conj(sp) * apj + c * aqj;
        }
        a(p, q) = cplx{0.0, 0.0};
        a(q, p) = cplx{0.0, 0.0};
        a(p, p) = cplx{a(p, p).real(), 0.0};
        a(q, q) = cplx{a(q, q).real(), 0.0};
      }
    }
  }

  // Sort eigenvalues ascending and permute eigenvector columns to match.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });
  EigenSystem out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

}  // namespace qpg
