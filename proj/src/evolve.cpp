#include "qpgate/evolve.hpp"

#include <algorithm>
#include <cmath>

namespace qpg {

namespace {

constexpr double kStateRelTolDefault = 1e-8;
constexpr double kDensityRelTolDefault = 1e-7;

// Hard failure threshold for norm/trace drift. At default tolerances this is
// 1e-6; deliberately loose runs (convergence studies start at 1e-6) get a
// proportionally relaxed guard.
double drift_limit(double rel_tol) { return std::max(1e-6, 50.0 * rel_tol); }

struct Triplet {
  std::size_t row;
  std::size_t col;
  cplx value;
};

/// Nonzero entries of a constant operator; lets the hot loops run in
/// O(nnz * dim) instead of O(dim^2) without changing any public contract.
struct SparseOp {
  std::size_t dim = 0;
  std::vector<Triplet> entries;

  static SparseOp from(const ComplexMatrix& m) {
    SparseOp s;
    s.dim = m.rows();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        const cplx v = m(i, j);
        if (v != cplx{0.0, 0.0}) s.entries.push_back({i, j, v});
      }
    }
    return s;
  }
};

struct PhasedSparseTerm {
  double omega;
  SparseOp op;
};

std::vector<double> sample_times(double t_final, int n_samples) {
  if (t_final < 0.0) throw ConfigError("evolution time must be non-negative");
  if (t_final == 0.0) return {0.0};
  const int n = std::max(2, n_samples);
  std::vector<double> times(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    times[static_cast<std::size_t>(i)] =
        t_final * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  times.back() = t_final;
  return times;
}

double default_max_step(double t_final) {
  return t_final > 0.0 ? t_final / 50.0 : 1.0;
}

// Expectations are normalized by the current norm/trace so they measure the
// physical state, not the integrator's slow global amplitude drift (which is
// tracked separately as conservation_drift).
double photon_expectation_state(const std::vector<cplx>& amps,
                                const HilbertSpace& space) {
  const std::size_t cav = space.cavity_dim();
  double acc = 0.0;
  double weight = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double w = std::norm(amps[i]);
    acc += static_cast<double>(i % cav) * w;
    weight += w;
  }
  return weight > 0.0 ? acc / weight : 0.0;
}

double photon_expectation_density(const std::vector<cplx>& rho_flat,
                                  const HilbertSpace& space) {
  const std::size_t d = space.dim();
  const std::size_t cav = space.cavity_dim();
  double acc = 0.0;
  double weight = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double w = rho_flat[i * d + i].real();
    acc += static_cast<double>(i % cav) * w;
    weight += w;
  }
  return weight > 0.0 ? acc / weight : 0.0;
}

std::vector<double> level_populations_state(const std::vector<cplx>& amps,
                                            const HilbertSpace& space) {
  std::vector<double> pops(static_cast<std::size_t>(space.n_qutrits) * 3, 0.0);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double w = std::norm(amps[i]);
    if (w == 0.0) continue;
    for (int j = 1; j <= space.n_qutrits; ++j) {
      pops[static_cast<std::size_t>(j - 1) * 3 +
           static_cast<std::size_t>(space.qutrit_level(i, j))] += w;
    }
  }
  return pops;
}

std::vector<double> level_populations_density(const std::vector<cplx>& rho_flat,
                                              const HilbertSpace& space) {
  const std::size_t d = space.dim();
  std::vector<double> pops(static_cast<std::size_t>(space.n_qutrits) * 3, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    const double w = rho_flat[i * d + i].real();
    for (int j = 1; j <= space.n_qutrits; ++j) {
      pops[static_cast<std::size_t>(j - 1) * 3 +
           static_cast<std::size_t>(space.qutrit_level(i, j))] += w;
    }
  }
  return pops;
}

double vector_norm(const std::vector<cplx>& v) {
  double acc = 0.0;
  for (const auto& x : v) acc += std::norm(x);
  return std::sqrt(acc);
}

double flat_trace(const std::vector<cplx>& rho_flat, std::size_t d) {
  double acc = 0.0;
  for (std::size_t i = 0; i < d; ++i) acc += rho_flat[i * d + i].real();
  return acc;
}

/// Shared sampling loop around the integrator: integrates segment by segment
/// so observables are recorded exactly at the sample times.
template <typename Record, typename PhotonAt>
Trajectory run_sampled(AdaptiveRk45& stepper, const OdeRhs& rhs,
                       std::vector<cplx>& y, double t_final,
                       const EvolutionConfig& cfg, const Record& record,
                       const PhotonAt& photon_at) {
  Trajectory traj;
  const auto times = sample_times(t_final, cfg.n_samples);
  traj.max_photon_expectation = photon_at(y);
  const StepObserver observer = [&](double, const std::vector<cplx>& state) {
    traj.max_photon_expectation =
        std::max(traj.max_photon_expectation, photon_at(state));
  };
  record(traj, times.front(), y);
  for (std::size_t s = 1; s < times.size(); ++s) {
    stepper.integrate(rhs, y, times[s - 1], times[s], observer);
    record(traj, times[s], y);
  }
  traj.stats = stepper.stats();
  return traj;
}

}  // namespace

EvolutionConfig resolve_config(const EvolutionConfig& cfg,
                               const SystemParams& params) {
  EvolutionConfig out = cfg;
  if (!out.max_step) {
    out.max_step = 2.0 * M_PI / (20.0 * params.delta1);
  }
  return out;
}

static Trajectory evolve_state_impl(const OdeRhs& rhs, const QuantumState& psi0,
                                    double t_final, const EvolutionConfig& cfg) {
  cfg.validate();
  psi0.check_normalized();
  if (psi0.amplitudes.size() > cfg.max_state_dim) {
    throw DimensionError("dimension limit exceeded");
  }
  const HilbertSpace space = psi0.space;
  const double max_step = cfg.max_step.value_or(default_max_step(t_final));
  AdaptiveRk45 stepper(cfg.rel_tol.value_or(kStateRelTolDefault), cfg.abs_tol,
                       max_step, cfg.initial_step.value_or(0.0), cfg.max_steps);

  std::vector<cplx> y = psi0.amplitudes;
  auto record = [&space](Trajectory& traj, double t, const std::vector<cplx>& v) {
    TrajectorySample s;
    s.time = t;
    s.norm_or_trace = vector_norm(v);
    s.photon_expectation = photon_expectation_state(v, space);
    s.level_populations = level_populations_state(v, space);
    traj.samples.push_back(std::move(s));
  };
  auto photon_at = [&space](const std::vector<cplx>& v) {
    return photon_expectation_state(v, space);
  };

  Trajectory traj = run_sampled(stepper, rhs, y, t_final, cfg, record, photon_at);
  for (const auto& s : traj.samples) {
    traj.conservation_drift =
        std::max(traj.conservation_drift, std::abs(s.norm_or_trace - 1.0));
  }
  if (traj.conservation_drift > drift_limit(cfg.rel_tol.value_or(kStateRelTolDefault))) {
    throw NumericalError("integrator accuracy failure");
  }
  traj.final_state = QuantumState{space, std::move(y)};
  return traj;
}

Trajectory evolve_schrodinger(const HamiltonianFn& h_of_t, const QuantumState& psi0,
                              double t_final, const EvolutionConfig& cfg) {
  const std::size_t d = psi0.amplitudes.size();
  const OdeRhs rhs = [&h_of_t, d](double t, const std::vector<cplx>& y,
                                  std::vector<cplx>& dydt) {
    const ComplexMatrix h = h_of_t(t);
    if (h.rows() != d || h.cols() != d) {
      throw DimensionError("Hamiltonian does not match the state dimension");
    }
    for (std::size_t i = 0; i < d; ++i) {
      cplx acc{0.0, 0.0};
      for (std::size_t j = 0; j < d; ++j) acc += h(i, j) * y[j];
      dydt[i] = -kImag * acc;
    }
  };
  return evolve_state_impl(rhs, psi0, t_final, cfg);
}

Trajectory evolve_schrodinger(const TimeDependentHamiltonian& h,
                              const QuantumState& psi0, double t_final,
                              const EvolutionConfig& cfg) {
  if (h.dim != psi0.amplitudes.size()) {
    throw DimensionError("Hamiltonian does not match the state dimension");
  }
  std::vector<PhasedSparseTerm> terms;
  terms.reserve(h.terms.size());
  for (const auto& term : h.terms) {
    terms.push_back({term.omega, SparseOp::from(term.op)});
  }
  const OdeRhs rhs = [terms](double t, const std::vector<cplx>& y,
                             std::vector<cplx>& dydt) {
    std::fill(dydt.begin(), dydt.end(), cplx{0.0, 0.0});
    for (const auto& term : terms) {
      const cplx coeff = -kImag * std::polar(1.0, term.omega * t);
      for (const auto& e : term.op.entries) {
        dydt[e.row] += coeff * e.value * y[e.col];
      }
    }
  };
  return evolve_state_impl(rhs, psi0, t_final, cfg);
}

Trajectory evolve_lindblad(const SystemParams& params, const DensityMatrix& rho0,
                           double t_final, const EvolutionConfig& cfg_in) {
  params.validate();
  const EvolutionConfig cfg = resolve_config(cfg_in, params);
  cfg.validate();
  const HilbertSpace space = rho0.space;
  if (space.n_qutrits != params.n_qutrits ||
      space.fock_cutoff != params.fock_cutoff) {
    throw DimensionError("space is inconsistent with the parameter record");
  }
  const std::size_t d = space.dim();
  if (d > cfg.max_density_dim) throw DimensionError("dimension limit exceeded");
  if (!rho0.is_hermitian_within(1e-9)) {
    throw NumericalError("initial density matrix is not Hermitian");
  }
  if (std::abs(rho0.trace_real() - 1.0) > 1e-7) {
    throw NumericalError("initial density matrix trace deviates from unity");
  }

  // Hamiltonian terms.
  const TimeDependentHamiltonian h = make_full_hamiltonian(params, space);
  std::vector<PhasedSparseTerm> h_terms;
  for (const auto& term : h.terms) {
    h_terms.push_back({term.omega, SparseOp::from(term.op)});
  }

  // Collapse channels with the rate folded in as sqrt(rate).
  std::vector<SparseOp> channels;
  auto add_channel = [&](double rate, const ComplexMatrix& op) {
    if (rate <= 0.0) return;
    channels.push_back(SparseOp::from(cplx{std::sqrt(rate), 0.0} * op));
  };
  add_channel(params.kappa, embed(annihilation(space.fock_cutoff), SiteId::cavity(),
                                  space, cfg.max_density_dim));
  for (int j = 1; j <= params.n_qutrits; ++j) {
    const SiteId site = SiteId::qutrit(j);
    add_channel(params.gamma_fe,
                embed(qutrit_transition(kE, kF), site, space, cfg.max_density_dim));
    add_channel(params.gamma_fg,
                embed(qutrit_transition(kG, kF), site, space, cfg.max_density_dim));
    add_channel(params.gamma_eg,
                embed(qutrit_transition(kG, kE), site, space, cfg.max_density_dim));
    add_channel(params.gamma_phi_f,
                embed(qutrit_projector(kF), site, space, cfg.max_density_dim));
    add_channel(params.gamma_phi_e,
                embed(qutrit_projector(kE), site, space, cfg.max_density_dim));
  }

  // G = sum L^+ L is diagonal for every channel above.
  std::vector<double> damping(d, 0.0);
  for (const auto& ch : channels) {
    for (const auto& e : ch.entries) {
      damping[e.col] += std::norm(e.value);
    }
  }

  const OdeRhs rhs = [h_terms, channels, damping, d](double t,
                                                     const std::vector<cplx>& y,
                                                     std::vector<cplx>& dydt) {
    std::fill(dydt.begin(), dydt.end(), cplx{0.0, 0.0});
    // -i (H rho - rho H), term by term.
    for (const auto& term : h_terms) {
      const cplx left = -kImag * std::polar(1.0, term.omega * t);
      const cplx right = -left;
      for (const auto& e : term.op.entries) {
        const cplx lv = left * e.value;
        const cplx* src = &y[e.col * d];
        cplx* dst = &dydt[e.row * d];
        for (std::size_t j = 0; j < d; ++j) dst[j] += lv * src[j];
        const cplx rv = right * e.value;
        for (std::size_t i = 0; i < d; ++i) {
          dydt[i * d + e.col] += rv * y[i * d + e.row];
        }
      }
    }
    // L rho L^+ scatter.
    for (const auto& ch : channels) {
      for (const auto& e1 : ch.entries) {
        for (const auto& e2 : ch.entries) {
          dydt[e1.row * d + e2.row] +=
              e1.value * std::conj(e2.value) * y[e1.col * d + e2.col];
        }
      }
    }
    // -(G rho + rho G)/2 with diagonal G.
    for (std::size_t i = 0; i < d; ++i) {
      const double gi = damping[i];
      cplx* row = &dydt[i * d];
      const cplx* src = &y[i * d];
      for (std::size_t j = 0; j < d; ++j) {
        row[j] -= 0.5 * (gi + damping[j]) * src[j];
      }
    }
  };

  AdaptiveRk45 stepper(cfg.rel_tol.value_or(kDensityRelTolDefault), cfg.abs_tol,
                       cfg.max_step.value_or(default_max_step(t_final)),
                       cfg.initial_step.value_or(0.0), cfg.max_steps);

  std::vector<cplx> y = rho0.matrix.data();
  auto record = [&space, d](Trajectory& traj, double t, const std::vector<cplx>& v) {
    TrajectorySample s;
    s.time = t;
    s.norm_or_trace = flat_trace(v, d);
    s.photon_expectation = photon_expectation_density(v, space);
    s.level_populations = level_populations_density(v, space);
    traj.samples.push_back(std::move(s));
  };
  auto photon_at = [&space](const std::vector<cplx>& v) {
    return photon_expectation_density(v, space);
  };

  Trajectory traj = run_sampled(stepper, rhs, y, t_final, cfg, record, photon_at);
  for (const auto& s : traj.samples) {
    traj.conservation_drift =
        std::max(traj.conservation_drift, std::abs(s.norm_or_trace - 1.0));
  }
  if (traj.conservation_drift >
      drift_limit(cfg.rel_tol.value_or(kDensityRelTolDefault))) {
    throw NumericalError("integrator accuracy failure");
  }
  ComplexMatrix final_m(d, d);
  final_m.data() = std::move(y);
  traj.final_density = DensityMatrix{space, std::move(final_m)};
  return traj;
}

}  // namespace qpg
