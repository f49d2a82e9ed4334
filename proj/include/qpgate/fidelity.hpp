#pragma once

#include <string>
#include <vector>

#include "qpgate/evolve.hpp"
#include "qpgate/gate.hpp"

namespace qpg {

/// Input-state selector: the product superposition used for the fidelity
/// figures, or one encoded basis bitstring. A selector (rather than a fixed
/// QuantumState) lets the same input be rebuilt when the Fock cutoff changes.
struct InputStateSpec {
  enum class Kind { kProductSuperposition, kBasis };
  Kind kind = Kind::kProductSuperposition;
  std::string bits;  // used when kind == kBasis

  QuantumState make(const HilbertSpace& space) const;

  friend bool operator==(const InputStateSpec& a, const InputStateSpec& b) = default;
};

struct GateRun {
  double fidelity = 0.0;
  DerivedParams derived;
  double max_photon = 0.0;
  double drift = 0.0;  // norm (ideal) or trace (lossy) drift
  Trajectory trajectory;
};

/// Evolves the input under the full interaction Hamiltonian for one gate
/// time and scores it against the ideal output: |<psi_id|psi(t_g)>|^2.
GateRun run_gate_ideal(const SystemParams& params, const QuantumState& input,
                       const EvolutionConfig& cfg = {});

/// Lindblad version: F = <psi_id| rho(t_g) |psi_id>.
GateRun run_gate_lossy(const SystemParams& params, const QuantumState& input,
                       const EvolutionConfig& cfg = {});

double gate_fidelity_ideal(const SystemParams& params, const QuantumState& input,
                           const EvolutionConfig& cfg = {});
double gate_fidelity_lossy(const SystemParams& params, const QuantumState& input,
                           const EvolutionConfig& cfg = {});

struct ConvergenceRow {
  int fock_cutoff = 0;
  double rel_tol = 0.0;
  double fidelity = 0.0;
  /// |fidelity - previous row's fidelity|; NaN on the first row of a phase.
  double change = 0.0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  bool converged = false;
  int converged_cutoff = 0;
  double converged_rel_tol = 0.0;
  double fidelity = 0.0;
};

/// Doubles the Fock cutoff (1, 2, 4, ... up to 32) until successive
/// fidelities differ by < 1e-4, then tightens the relative tolerance tenfold
/// until the change drops below 1e-5. Uses the lossy pipeline when any rate
/// is nonzero, the ideal pipeline otherwise.
ConvergenceReport convergence_study(const SystemParams& params,
                                    const InputStateSpec& input,
                                    const EvolutionConfig& cfg = {});

}  // namespace qpg
