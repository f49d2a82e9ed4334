#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qpgate/hilbert.hpp"
#include "qpgate/model.hpp"
#include "qpgate/ode.hpp"
#include "qpgate/params.hpp"

namespace qpg {

struct TrajectorySample {
  double time = 0.0;
  double norm_or_trace = 0.0;
  double photon_expectation = 0.0;
  /// Populations of (g, e, f) per qutrit, flattened as [q1_g, q1_e, q1_f, q2_g, ...].
  std::vector<double> level_populations;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  /// Maximum <a^+ a> seen at any accepted integrator step (not just samples).
  double max_photon_expectation = 0.0;
  /// max |norm - 1| (states) or |trace - 1| (density matrices) over the run.
  double conservation_drift = 0.0;
  std::optional<QuantumState> final_state;
  std::optional<DensityMatrix> final_density;
  StepperStats stats;
};

using HamiltonianFn = std::function<ComplexMatrix(double)>;

/// Integrates d psi/dt = -i H(t) psi with the generic dense provider. No
/// renormalization is applied; norm drift beyond 1e-6 raises
/// "integrator accuracy failure".
Trajectory evolve_schrodinger(const HamiltonianFn& h_of_t, const QuantumState& psi0,
                              double t_final, const EvolutionConfig& cfg = {});

/// Fast path for phased-term Hamiltonians (the model builders' output).
Trajectory evolve_schrodinger(const TimeDependentHamiltonian& h,
                              const QuantumState& psi0, double t_final,
                              const EvolutionConfig& cfg = {});

/// Integrates the full master equation: the commutator with the interaction
/// Hamiltonian plus cavity decay, the three qutrit relaxation channels and
/// the two pure-dephasing channels, all uniform across qutrits.
Trajectory evolve_lindblad(const SystemParams& params, const DensityMatrix& rho0,
                           double t_final, const EvolutionConfig& cfg = {});

/// EvolutionConfig with the max step resolved against the fastest
/// interaction-picture phase of the model: 2*pi/(20*Delta_1).
EvolutionConfig resolve_config(const EvolutionConfig& cfg, const SystemParams& params);

}  // namespace qpg
