#include "qpgate/hilbert.hpp"

#include <cmath>

namespace qpg {

HilbertSpace::HilbertSpace(int n, int cutoff) : n_qutrits(n), fock_cutoff(cutoff) {
  if (n < 1) throw DimensionError("need at least one qutrit");
  if (cutoff < 1) throw DimensionError("cutoff too small to represent coupling");
}

std::size_t HilbertSpace::dim() const {
  std::size_t d = cavity_dim();
  for (int j = 0; j < n_qutrits; ++j) d *= 3;
  return d;
}

std::size_t HilbertSpace::index(const std::vector<int>& levels, int n_photon) const {
  if (static_cast<int>(levels.size()) != n_qutrits) {
    throw DimensionError("level list length does not match qutrit count");
  }
  if (n_photon < 0 || n_photon > fock_cutoff) {
    throw DimensionError("photon number outside truncated Fock space");
  }
  std::size_t idx = 0;
  for (int q : levels) {
    if (q < 0 || q > 2) throw DimensionError("qutrit level out of range");
    idx = idx * 3 + static_cast<std::size_t>(q);
  }
  return idx * cavity_dim() + static_cast<std::size_t>(n_photon);
}

int HilbertSpace::qutrit_level(std::size_t basis_index, int qutrit) const {
  if (qutrit < 1 || qutrit > n_qutrits) throw DimensionError("unknown site");
  std::size_t rest = basis_index / cavity_dim();
  // Qutrit n is the least significant base-3 digit.
  int shift = n_qutrits - qutrit;
  for (int s = 0; s < shift; ++s) rest /= 3;
  return static_cast<int>(rest % 3);
}

int HilbertSpace::photon_number(std::size_t basis_index) const {
  return static_cast<int>(basis_index % cavity_dim());
}

ComplexMatrix embed(const ComplexMatrix& op, SiteId site, const HilbertSpace& space,
                    std::size_t max_dim) {
  const std::size_t local =
      site.is_cavity() ? space.cavity_dim() : static_cast<std::size_t>(3);
  if (!site.is_cavity() &&
      (site.qutrit_index() < 1 || site.qutrit_index() > space.n_qutrits)) {
    throw DimensionError("unknown site");
  }
  if (op.rows() != local || op.cols() != local) {
    throw DimensionError("operator does not match the site's local dimension");
  }
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (int j = 1; j <= space.n_qutrits; ++j) {
    const bool here = !site.is_cavity() && site.qutrit_index() == j;
    out = kron(out, here ? op : ComplexMatrix::identity(3), max_dim);
  }
  out = kron(out, site.is_cavity() ? op : ComplexMatrix::identity(space.cavity_dim()),
             max_dim);
  return out;
}

QuantumState QuantumState::basis_state(const HilbertSpace& space, std::size_t index) {
  if (index >= space.dim()) throw DimensionError("basis index out of range");
  QuantumState psi{space, std::vector<cplx>(space.dim(), cplx{0.0, 0.0})};
  psi.amplitudes[index] = 1.0;
  return psi;
}

double QuantumState::norm() const {
  double acc = 0.0;
  for (const auto& a : amplitudes) acc += std::norm(a);
  return std::sqrt(acc);
}

void QuantumState::check_normalized(double tol) const {
  if (std::abs(norm() - 1.0) > tol) {
    throw NumericalError("state norm deviates from unity");
  }
}

cplx inner_product(const QuantumState& a, const QuantumState& b) {
  if (!(a.space == b.space)) throw DimensionError("Hilbert space mismatch");
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
    acc += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  }
  return acc;
}

DensityMatrix DensityMatrix::from_pure(const QuantumState& psi) {
  const std::size_t d = psi.amplitudes.size();
  DensityMatrix rho{psi.space, ComplexMatrix(d, d)};
  for (std::size_t i = 0; i < d; ++i) {
    const cplx ai = psi.amplitudes[i];
    if (ai == cplx{0.0, 0.0}) continue;
    for (std::size_t j = 0; j < d; ++j) {
      rho.matrix(i, j) = ai * std::conj(psi.amplitudes[j]);
    }
  }
  return rho;
}

double DensityMatrix::trace_real() const { return trace(matrix).real(); }

bool DensityMatrix::is_hermitian_within(double rel_tol) const {
  return is_hermitian(matrix, rel_tol);
}

double DensityMatrix::smallest_eigenvalue() const {
  return hermitian_eigenvalues(matrix).front();
}

double pure_state_fidelity(const QuantumState& psi, const DensityMatrix& rho) {
  if (!(psi.space == rho.space)) throw DimensionError("Hilbert space mismatch");
  const std::size_t d = psi.amplitudes.size();
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < d; ++i) {
    const cplx ci = std::conj(psi.amplitudes[i]);
    if (ci == cplx{0.0, 0.0}) continue;
    cplx row{0.0, 0.0};
    for (std::size_t j = 0; j < d; ++j) row += rho.matrix(i, j) * psi.amplitudes[j];
    acc += ci * row;
  }
  if (std::abs(acc.imag()) > 1e-9) {
    throw NumericalError("fidelity has a non-negligible imaginary part");
  }
  return acc.real();
}

}  // namespace qpg
