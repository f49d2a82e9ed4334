#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qpgate/matrix.hpp"
#include "qpgate/types.hpp"

namespace qpg {

// Qutrit levels, ordered (g, e, f) = (0, 1, 2).
enum Level : int { kG = 0, kE = 1, kF = 2 };

/// Layout of n qutrits tensored with one truncated cavity mode.
///
/// Basis index = ((...((q1)*3 + q2)*3 + ...)*3 + qn)*(cutoff+1) + n_photon,
/// i.e. qutrit 1 is the most significant factor and the photon number the
/// least significant. This map is normative for every state and operator.
struct HilbertSpace {
  int n_qutrits = 0;
  int fock_cutoff = 0;

  HilbertSpace() = default;
  HilbertSpace(int n_qutrits, int fock_cutoff);

  std::size_t dim() const;
  std::size_t cavity_dim() const { return static_cast<std::size_t>(fock_cutoff) + 1; }

  /// Full-space index of |q1 q2 ... qn; n_photon>.
  std::size_t index(const std::vector<int>& levels, int n_photon) const;
  /// Level of 1-based qutrit j in the given basis index.
  int qutrit_level(std::size_t basis_index, int qutrit) const;
  int photon_number(std::size_t basis_index) const;

  friend bool operator==(const HilbertSpace& a, const HilbertSpace& b) = default;
};

/// Identifies one tensor factor: a 1-based qutrit or the cavity mode.
struct SiteId {
  static SiteId qutrit(int one_based) { return SiteId{one_based}; }
  static SiteId cavity() { return SiteId{0}; }

  bool is_cavity() const { return id == 0; }
  int qutrit_index() const { return id; }  // 1-based, valid when !is_cavity()

  int id = 0;
};

/// Places a single-site operator into the full space (identity elsewhere).
ComplexMatrix embed(const ComplexMatrix& op, SiteId site, const HilbertSpace& space,
                    std::size_t max_dim = kMaxStateDim);

/// Unit-norm complex amplitude vector over a HilbertSpace.
struct QuantumState {
  HilbertSpace space;
  std::vector<cplx> amplitudes;

  static QuantumState basis_state(const HilbertSpace& space, std::size_t index);

  double norm() const;
  /// Throws NumericalError if | ||psi|| - 1 | exceeds tol.
  void check_normalized(double tol = 1e-9) const;
};

cplx inner_product(const QuantumState& a, const QuantumState& b);

/// Hermitian, unit-trace, PSD matrix over a HilbertSpace. Hermiticity and
/// trace are cheap and checked on demand; positivity only in validation runs.
struct DensityMatrix {
  HilbertSpace space;
  ComplexMatrix matrix;

  static DensityMatrix from_pure(const QuantumState& psi);

  double trace_real() const;
  bool is_hermitian_within(double rel_tol = 1e-9) const;
  double smallest_eigenvalue() const;
};

/// F = <psi| rho |psi>. The imaginary residue must stay below 1e-9 or the
/// value is considered corrupted and a NumericalError is thrown.
double pure_state_fidelity(const QuantumState& psi, const DensityMatrix& rho);

}  // namespace qpg
