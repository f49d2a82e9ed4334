#pragma once

#include <vector>

#include "qpgate/hilbert.hpp"
#include "qpgate/matrix.hpp"
#include "qpgate/params.hpp"

namespace qpg {

/// One rotating term of an interaction-picture Hamiltonian: e^{i omega t} op.
/// Hermitian conjugate partners appear as separate terms with -omega.
struct PhasedTerm {
  double omega = 0.0;
  ComplexMatrix op;
};

/// H(t) = sum_k e^{i omega_k t} T_k over one fixed dimension.
struct TimeDependentHamiltonian {
  std::size_t dim = 0;
  std::vector<PhasedTerm> terms;

  ComplexMatrix at(double t) const;
};

/// Flip-flop ladder operators of the |e> <-> |f> transition: sigma_plus =
/// |f><e| on a single qutrit.
ComplexMatrix qutrit_sigma_plus();
ComplexMatrix qutrit_sigma_minus();
ComplexMatrix qutrit_projector(Level level);
/// |a><b| on one qutrit.
ComplexMatrix qutrit_transition(Level to, Level from);

/// Interaction Hamiltonian of the full qutrit-cavity model (RWA, interaction
/// picture): mu (e^{i Delta t} a sigma_k^+ + h.c.) summed over the target
/// qutrits plus the mu1 (e^{i Delta_1 t} a sigma_1^+ + h.c.) control term.
TimeDependentHamiltonian make_full_hamiltonian(const SystemParams& params,
                                               const HilbertSpace& space);

/// Dispersive (second order) model on the same full space: photon-dependent
/// Stark shifts, the target-target exchange, and the detuned control-target
/// flip-flop with phase e^{+-i delta t}.
TimeDependentHamiltonian make_dispersive_hamiltonian(const SystemParams& params,
                                                     const HilbertSpace& space);

ComplexMatrix build_full_hamiltonian(const SystemParams& params,
                                     const HilbertSpace& space, double t);
ComplexMatrix build_dispersive_hamiltonian(const SystemParams& params,
                                           const HilbertSpace& space, double t);

/// Qutrit-only effective Hamiltonian after the cavity is eliminated in
/// vacuum (3^n dimensional, time independent): Stark shifts, the target
/// exchange, and the control-conditioned exchange with coefficient
/// lambda^2/delta.
ComplexMatrix build_effective_hamiltonian_full(const SystemParams& params, int n);

/// Diagonal effective Hamiltonian on the encoded subspace, extended over the
/// full 3^n product basis: mu1^2/Delta_1 + (lambda^2/delta) * (# targets in
/// |e>) on states with qutrit 1 in |f>, zero elsewhere.
ComplexMatrix build_effective_hamiltonian_encoded(const SystemParams& params, int n);

/// Index of |q1 q2 ... qn> in the 3^n qutrit-only product basis (qutrit 1
/// most significant, levels ordered g,e,f).
std::size_t qutrit_basis_index(const std::vector<int>& levels);
int qutrit_level_of(std::size_t index, int qutrit, int n);

/// Diagonal 0/1 projector onto span{ |q1 in {g,f}> x |q2..qn in {g,e}> }.
ComplexMatrix encoded_subspace_projector(int n);

}  // namespace qpg
