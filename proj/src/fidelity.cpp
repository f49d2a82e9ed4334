#include "qpgate/fidelity.hpp"

#include <cmath>
#include <limits>

namespace qpg {

QuantumState InputStateSpec::make(const HilbertSpace& space) const {
  if (kind == Kind::kProductSuperposition) return product_superposition_state(space);
  return encode(bits, space);
}

namespace {

// The gate pipelines default to tighter tolerances than the raw engines:
// fidelities are compared at the 1e-6 level and the norm/trace budget over a
// full gate is 1e-7.
EvolutionConfig pipeline_config(const EvolutionConfig& cfg_in,
                                const SystemParams& params, double rel_default) {
  EvolutionConfig cfg = resolve_config(cfg_in, params);
  if (!cfg.rel_tol) cfg.rel_tol = rel_default;
  return cfg;
}

}  // namespace

GateRun run_gate_ideal(const SystemParams& params, const QuantumState& input,
                       const EvolutionConfig& cfg_in) {
  params.validate();
  const EvolutionConfig cfg = pipeline_config(cfg_in, params, 1e-9);
  GateRun run;
  run.derived = derive(params);
  const QuantumState ideal = ideal_output_state(input);
  const TimeDependentHamiltonian h = make_full_hamiltonian(params, input.space);
  run.trajectory = evolve_schrodinger(h, input, run.derived.gate_time, cfg);
  run.max_photon = run.trajectory.max_photon_expectation;
  run.drift = run.trajectory.conservation_drift;
  run.fidelity = std::norm(inner_product(ideal, *run.trajectory.final_state));
  return run;
}

GateRun run_gate_lossy(const SystemParams& params, const QuantumState& input,
                       const EvolutionConfig& cfg_in) {
  params.validate();
  const EvolutionConfig cfg = pipeline_config(cfg_in, params, 1e-8);
  GateRun run;
  run.derived = derive(params);
  const QuantumState ideal = ideal_output_state(input);
  run.trajectory = evolve_lindblad(params, DensityMatrix::from_pure(input),
                                   run.derived.gate_time, cfg);
  run.max_photon = run.trajectory.max_photon_expectation;
  run.drift = run.trajectory.conservation_drift;
  run.fidelity = pure_state_fidelity(ideal, *run.trajectory.final_density);
  return run;
}

double gate_fidelity_ideal(const SystemParams& params, const QuantumState& input,
                           const EvolutionConfig& cfg) {
  return run_gate_ideal(params, input, cfg).fidelity;
}

double gate_fidelity_lossy(const SystemParams& params, const QuantumState& input,
                           const EvolutionConfig& cfg) {
  return run_gate_lossy(params, input, cfg).fidelity;
}

namespace {

bool any_rate_nonzero(const SystemParams& p) {
  return p.kappa > 0.0 || p.gamma_fe > 0.0 || p.gamma_fg > 0.0 || p.gamma_eg > 0.0 ||
         p.gamma_phi_f > 0.0 || p.gamma_phi_e > 0.0;
}

double fidelity_at(const SystemParams& params, const InputStateSpec& input,
                   const EvolutionConfig& cfg) {
  const HilbertSpace space(params.n_qutrits, params.fock_cutoff);
  const QuantumState psi0 = input.make(space);
  return any_rate_nonzero(params) ? gate_fidelity_lossy(params, psi0, cfg)
                                  : gate_fidelity_ideal(params, psi0, cfg);
}

}  // namespace

ConvergenceReport convergence_study(const SystemParams& params,
                                    const InputStateSpec& input,
                                    const EvolutionConfig& cfg) {
  params.validate();
  constexpr int kMaxCutoff = 32;
  constexpr double kCutoffTol = 1e-4;
  constexpr double kTolPhaseTol = 1e-5;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  ConvergenceReport report;
  SystemParams p = params;
  EvolutionConfig run_cfg = cfg;
  const double base_rel = cfg.rel_tol.value_or(1e-6);
  run_cfg.rel_tol = base_rel;

  // Phase 1: double the cutoff until the fidelity stops moving. The
  // converged cutoff is the smaller member of the agreeing pair: it is the
  // minimum cutoff that already suffices.
  double previous = nan;
  int previous_cutoff = 0;
  for (int cutoff = 1; cutoff <= kMaxCutoff; cutoff *= 2) {
    p.fock_cutoff = cutoff;
    const double f = fidelity_at(p, input, run_cfg);
    const double change = std::isnan(previous) ? nan : std::abs(f - previous);
    report.rows.push_back({cutoff, base_rel, f, change});
    if (!std::isnan(change) && change < kCutoffTol) {
      report.converged = true;
      report.converged_cutoff = previous_cutoff;
      report.fidelity = previous;
      break;
    }
    previous = f;
    previous_cutoff = cutoff;
  }
  if (!report.converged) return report;

  // Phase 2: tighten the relative tolerance at the converged cutoff.
  p.fock_cutoff = report.converged_cutoff;
  previous = report.fidelity;
  report.converged_rel_tol = base_rel;
  for (double rel = base_rel * 0.1; rel >= 1e-10; rel *= 0.1) {
    run_cfg.rel_tol = rel;
    const double f = fidelity_at(p, input, run_cfg);
    const double change = std::abs(f - previous);
    report.rows.push_back({report.converged_cutoff, rel, f, change});
    report.converged_rel_tol = rel;
    report.fidelity = f;
    if (change < kTolPhaseTol) break;
    previous = f;
  }
  return report;
}

}  // namespace qpg
