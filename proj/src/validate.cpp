#include "qpgate/validate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <json.hpp>

#include "qpgate/evolve.hpp"
#include "qpgate/gate.hpp"

namespace qpg {

namespace {

ComplexMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (auto& x : m.data()) x = cplx{dist(rng), dist(rng)};
  return m;
}

QuantumState random_state(std::mt19937& rng, const HilbertSpace& space) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  QuantumState psi{space, std::vector<cplx>(space.dim())};
  for (auto& a : psi.amplitudes) a = cplx{dist(rng), dist(rng)};
  const double n = psi.norm();
  for (auto& a : psi.amplitudes) a /= n;
  return psi;
}

double max_entry_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  }
  return worst;
}

struct Suite {
  ValidationReport report;

  void add(const std::string& module_name, const std::string& name, double measured,
           double threshold, bool passed, const std::string& detail = "") {
    report.checks.push_back({name, module_name, passed, measured, threshold, detail});
  }

  /// Convenience for "measured <= threshold" checks.
  void add_le(const std::string& module_name, const std::string& name,
              double measured, double threshold, const std::string& detail = "") {
    add(module_name, name, measured, threshold, measured <= threshold, detail);
  }
};

void check_operator_algebra(Suite& suite, std::mt19937& rng) {
  // kron associativity on random small matrices.
  double worst = 0.0;
  for (int round = 0; round < 8; ++round) {
    const auto a = random_matrix(rng, 2, 3);
    const auto b = random_matrix(rng, 3, 2);
    const auto c = random_matrix(rng, 2, 2);
    worst = std::max(worst, max_entry_diff(kron(kron(a, b), c), kron(a, kron(b, c))));
  }
  suite.add_le("operator-algebra", "kron-associativity", worst, 1e-14);

  // Disjoint-site embeds commute.
  const HilbertSpace space(3, 2);
  const auto x = embed(random_matrix(rng, 3, 3), SiteId::qutrit(1), space);
  const auto y = embed(random_matrix(rng, 3, 3), SiteId::qutrit(3), space);
  const auto z = embed(random_matrix(rng, 3, 3), SiteId::cavity(), space);
  const double comm = std::max(max_entry_diff(x * y, y * x), max_entry_diff(x * z, z * x));
  suite.add_le("operator-algebra", "embed-disjoint-commutation", comm, 1e-12);

  // [a, a+] = I except the (cutoff, cutoff) entry, which is -cutoff.
  const int cutoff = 6;
  const auto a = annihilation(cutoff);
  ComplexMatrix commutator = a * adjoint(a) - adjoint(a) * a;
  double law = std::abs(commutator(cutoff, cutoff) - cplx{-double(cutoff), 0.0});
  commutator(cutoff, cutoff) = 1.0;
  law = std::max(law, max_entry_diff(commutator, ComplexMatrix::identity(cutoff + 1)));
  suite.add_le("operator-algebra", "annihilation-truncation-commutator", law, 1e-14);

  // Fidelity linear in rho and global-phase invariant in psi.
  const HilbertSpace small(2, 1);
  const auto psi = random_state(rng, small);
  const auto phi1 = random_state(rng, small);
  const auto phi2 = random_state(rng, small);
  const auto rho1 = DensityMatrix::from_pure(phi1);
  const auto rho2 = DensityMatrix::from_pure(phi2);
  DensityMatrix mix{small, cplx{0.25, 0.0} * rho1.matrix + cplx{0.75, 0.0} * rho2.matrix};
  const double lin = std::abs(pure_state_fidelity(psi, mix) -
                              (0.25 * pure_state_fidelity(psi, rho1) +
                               0.75 * pure_state_fidelity(psi, rho2)));
  QuantumState rotated = psi;
  for (auto& amp : rotated.amplitudes) amp *= std::polar(1.0, 1.234);
  const double phase = std::abs(pure_state_fidelity(rotated, mix) -
                                pure_state_fidelity(psi, mix));
  suite.add_le("operator-algebra", "fidelity-linearity-phase", std::max(lin, phase),
               1e-12);
}

void check_system_model(Suite& suite, const SystemParams& params,
                        std::mt19937& rng) {
  // P H4 P = H7 and H4 maps ran(P) into ran(P), n = 2, 3, 4.
  double proj_worst = 0.0;
  double range_worst = 0.0;
  for (int n = 2; n <= 4; ++n) {
    const auto h4 = build_effective_hamiltonian_full(params, n);
    const auto h7 = build_effective_hamiltonian_encoded(params, n);
    const auto p = encoded_subspace_projector(n);
    proj_worst = std::max(proj_worst, max_entry_diff(p * h4 * p, h7));
    const auto leak = h4 * p - p * (h4 * p);
    range_worst = std::max(range_worst, max_abs(leak));
  }
  suite.add_le("system-model", "projection-identity", proj_worst, 1e-14);
  suite.add_le("system-model", "projection-range-invariance", range_worst, 1e-14);

  // Hermiticity of both time-dependent builders at random times.
  const HilbertSpace space(params.n_qutrits, params.fock_cutoff);
  const DerivedParams d = derive(params);
  std::uniform_real_distribution<double> tdist(0.0, d.gate_time);
  double herm = 0.0;
  for (int round = 0; round < 20; ++round) {
    const double t = tdist(rng);
    for (const auto& h : {build_full_hamiltonian(params, space, t),
                          build_dispersive_hamiltonian(params, space, t)}) {
      const double scale = std::max(max_abs(h), 1e-300);
      herm = std::max(herm, max_entry_diff(h, adjoint(h)) / scale);
    }
  }
  suite.add_le("system-model", "builder-hermiticity", herm, 1e-12);

  // Zero coupling gives the zero matrix.
  SystemParams off = params;
  off.mu = 0.0;
  off.mu1 = 0.0;
  suite.add("system-model", "zero-coupling-full-hamiltonian",
            max_abs(build_full_hamiltonian(off, space, 0.7)), 0.0,
            max_abs(build_full_hamiltonian(off, space, 0.7)) == 0.0);

  // Photon number is conserved under the dispersive model.
  {
    HilbertSpace small(2, 3);
    SystemParams p = params;
    p.n_qutrits = 2;
    p.fock_cutoff = 3;
    QuantumState fock = QuantumState::basis_state(small, small.index({kE, kE}, 2));
    EvolutionConfig cfg;
    cfg.rel_tol = 1e-10;
    cfg.n_samples = 50;
    const auto traj =
        evolve_schrodinger(make_dispersive_hamiltonian(p, small), fock, 15.0,
                           resolve_config(cfg, p));
    double drift = 0.0;
    for (const auto& s : traj.samples) {
      drift = std::max(drift, std::abs(s.photon_expectation - 2.0));
    }
    suite.add_le("system-model", "photon-conservation-dispersive", drift, 1e-8);
  }

  // matched_mu scales linearly with (Delta_1, Delta, mu1); exact for s = 2.
  const double m1 = matched_mu(params.delta1, params.delta_cap, params.mu1);
  const double m2 = matched_mu(2.0 * params.delta1, 2.0 * params.delta_cap,
                               2.0 * params.mu1);
  suite.add("system-model", "matched-mu-scale-covariance", std::abs(m2 - 2.0 * m1),
            0.0, m2 == 2.0 * m1);
}

void check_ideal_gate(Suite& suite, const SystemParams& params, std::mt19937& rng) {
  // Closed form vs numerically integrated propagator of the encoded model.
  std::uniform_real_distribution<double> tdist(0.0, 80.0);
  std::uniform_real_distribution<double> d1dist(8.0, 14.0);
  std::uniform_real_distribution<double> dsdist(1.0, 3.0);
  double worst = 0.0;
  for (int draw = 0; draw < 3; ++draw) {
    SystemParams p = params;
    p.delta1 = d1dist(rng);
    p.delta_cap = p.delta1 - dsdist(rng);
    p.mu = matched_mu(p.delta1, p.delta_cap, p.mu1);
    const double t = tdist(rng);
    const auto h7 = build_effective_hamiltonian_encoded(p, 3);
    const auto u = closed_form_unitary(p, 3, t);
    const HilbertSpace qspace(3, 1);
    EvolutionConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-14;
    cfg.n_samples = 2;
    for (std::size_t col = 0; col < h7.rows(); ++col) {
      // The qutrit-only model lives on 3^n; pad into a space with a
      // spectator cavity so the evolution engine can host it.
      QuantumState basis{qspace, std::vector<cplx>(qspace.dim(), cplx{0.0, 0.0})};
      basis.amplitudes[col * qspace.cavity_dim()] = 1.0;
      const auto h_fn = [&h7, &qspace](double) {
        ComplexMatrix h(qspace.dim(), qspace.dim());
        for (std::size_t i = 0; i < h7.rows(); ++i) {
          h(i * qspace.cavity_dim(), i * qspace.cavity_dim()) = h7(i, i);
        }
        return h;
      };
      const auto traj = evolve_schrodinger(h_fn, basis, t, cfg);
      const cplx got = traj.final_state->amplitudes[col * qspace.cavity_dim()];
      worst = std::max(worst, std::abs(got - u(col, col)));
    }
  }
  suite.add_le("ideal-gate", "closed-form-vs-propagator", worst, 1e-8);

  // At one gate time with matched coupling the closed form realizes the gate.
  SystemParams matched = params;
  matched.mu = matched_mu(matched.delta1, matched.delta_cap, matched.mu1);
  const DerivedParams d = derive(matched);
  const auto u = closed_form_unitary(matched, 3, d.gate_time);
  const auto gate = ideal_gate_matrix(3);
  EncodingMap map{3};
  double gate_err = 0.0;
  for (std::size_t b = 0; b < 8; ++b) {
    std::string bits = {char('0' + ((b >> 2) & 1)), char('0' + ((b >> 1) & 1)),
                        char('0' + (b & 1))};
    const auto idx = map.qutrit_pattern_index(bits);
    gate_err = std::max(gate_err, std::abs(u(idx, idx) - gate(b, b)));
  }
  suite.add_le("ideal-gate", "gate-realization", gate_err, 1e-10);

  // The ideal gate is involutory.
  const auto g2 = gate * gate;
  const double invol = max_entry_diff(g2, ComplexMatrix::identity(8));
  suite.add("ideal-gate", "ideal-gate-involutory", invol, 0.0, invol == 0.0);

  // ideal_output_state preserves norm.
  const HilbertSpace space(params.n_qutrits, params.fock_cutoff);
  const auto out = ideal_output_state(product_superposition_state(space));
  suite.add_le("ideal-gate", "ideal-output-norm", std::abs(out.norm() - 1.0), 1e-12);
}

void check_dynamics(Suite& suite, const SystemParams& params,
                    const EvolutionConfig& ecfg, bool quick) {
  const HilbertSpace space(params.n_qutrits, params.fock_cutoff);
  const QuantumState input = product_superposition_state(space);

  // One ideal reference-point run feeds three checks.
  const GateRun ideal_run = run_gate_ideal(params, input, ecfg);
  suite.add_le("dynamics", "schrodinger-norm-conservation", ideal_run.drift, 1e-7);
  suite.add_le("dynamics", "virtual-photon-bound", ideal_run.max_photon, 0.05);

  // Agreement between the full model and the closed-form effective gate.
  // At the reference coupling ratio mu/Delta ~ 0.37 the second-order model
  // sits ~2.5% away from the integrated dynamics; the regression threshold
  // tracks that measured plateau.
  const DerivedParams d = derive(params);
  const auto u = closed_form_unitary(params, params.n_qutrits, d.gate_time);
  QuantumState closed = input;
  for (std::size_t i = 0; i < closed.amplitudes.size(); ++i) {
    closed.amplitudes[i] *= u(i / space.cavity_dim(), i / space.cavity_dim());
  }
  const double f_closed =
      std::norm(inner_product(ideal_output_state(input), closed));
  suite.add_le("dynamics", "effective-model-agreement",
               std::abs(ideal_run.fidelity - f_closed), 0.03);

  // Truth table over all encoded three-qubit basis states (always n = 3).
  SystemParams p3 = params;
  p3.n_qutrits = 3;
  const HilbertSpace space3(3, p3.fock_cutoff);
  double min_overlap = 1.0;
  bool signs_ok = true;
  for (std::size_t b = 0; b < 8; ++b) {
    std::string bits = {char('0' + ((b >> 2) & 1)), char('0' + ((b >> 1) & 1)),
                        char('0' + (b & 1))};
    const QuantumState psi0 = encode(bits, space3);
    const GateRun run = run_gate_ideal(p3, psi0, ecfg);
    const cplx c = static_cast<double>(gate_sign(bits)) *
                   inner_product(psi0, *run.trajectory.final_state);
    min_overlap = std::min(min_overlap, std::norm(c));
    signs_ok = signs_ok && c.real() > 0.0;
  }
  suite.add("dynamics", "truth-table-signs", min_overlap, 0.96,
            min_overlap >= 0.96 && signs_ok,
            signs_ok ? "" : "wrong sign on at least one basis state");

  if (quick) return;

  // Lindblad conservation at the dissipative reference point.
  SystemParams lossy = params;
  lossy.kappa = std::max(params.kappa, 0.01);
  lossy.gamma_fe = lossy.gamma_eg = lossy.gamma_phi_f = lossy.gamma_phi_e = 2e-4;
  lossy.gamma_fg = 0.01 * 2e-4;
  const GateRun lossy_run = run_gate_lossy(lossy, input, ecfg);
  const auto& rho = *lossy_run.trajectory.final_density;
  const bool herm = rho.is_hermitian_within(1e-9);
  const double min_eig = rho.smallest_eigenvalue();
  suite.add_le("dynamics", "lindblad-trace-conservation", lossy_run.drift, 1e-7);
  suite.add("dynamics", "lindblad-hermiticity-positivity", min_eig, -1e-7,
            herm && min_eig >= -1e-7, herm ? "" : "final state not Hermitian");

  // Zero-rate Lindblad reduces to the Schrodinger result.
  SystemParams lossless = params;
  lossless.kappa = lossless.gamma_fe = lossless.gamma_fg = lossless.gamma_eg = 0.0;
  lossless.gamma_phi_f = lossless.gamma_phi_e = 0.0;
  const double f_lindblad = gate_fidelity_lossy(lossless, input, ecfg);
  suite.add_le("dynamics", "zero-rate-reduction",
               std::abs(f_lindblad - ideal_run.fidelity), 1e-6);
}

}  // namespace

ValidationReport run_validation_suite(const RunConfig& cfg, bool quick) {
  Suite suite;
  suite.report.quick = quick;

  SystemParams params;
  try {
    params = cfg.effective_params();
  } catch (const Error& e) {
    suite.report.config_valid = false;
    suite.report.config_error = e.what();
    suite.report.checks.push_back(
        {"config-params-valid", "experiments-cli", false, 0.0, 0.0, e.what()});
    suite.report.all_passed = false;
    return suite.report;
  }
  suite.report.checks.push_back(
      {"config-params-valid", "experiments-cli", true, 0.0, 0.0, ""});

  std::mt19937 rng(20240517);
  const EvolutionConfig ecfg = cfg.evolution_config();
  check_operator_algebra(suite, rng);
  check_system_model(suite, params, rng);
  check_ideal_gate(suite, params, rng);
  check_dynamics(suite, params, ecfg, quick);

  suite.report.all_passed = true;
  for (const auto& c : suite.report.checks) {
    suite.report.all_passed = suite.report.all_passed && c.passed;
  }
  return suite.report;
}

std::string validation_report_json(const ValidationReport& report) {
  nlohmann::json j;
  j["tool"] = "qpgate";
  j["version"] = kToolVersion;
  j["quick"] = report.quick;
  j["config_valid"] = report.config_valid;
  if (!report.config_valid) j["config_error"] = report.config_error;

  nlohmann::json checks = nlohmann::json::array();
  int passed = 0, failed = 0;
  for (const auto& c : report.checks) {
    nlohmann::json item;
    item["name"] = c.name;
    item["module"] = c.module_name;
    item["status"] = c.passed ? "pass" : "fail";
    item["measured"] = c.measured;
    item["threshold"] = c.threshold;
    if (!c.detail.empty()) item["detail"] = c.detail;
    checks.push_back(item);
    (c.passed ? passed : failed) += 1;
  }
  j["checks"] = checks;
  j["passed"] = passed;
  j["failed"] = failed;

  // Checklist: every module invariant and the checks that cover it.
  const std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>>
      coverage = {
          {"operator-algebra",
           {{"kron associativity", "kron-associativity"},
            {"disjoint-site embeds commute", "embed-disjoint-commutation"},
            {"annihilation commutator truncation law",
             "annihilation-truncation-commutator"},
            {"fidelity linear in rho, phase invariant in psi",
             "fidelity-linearity-phase"}}},
          {"system-model",
           {{"projection identity P H4 P = H7", "projection-identity"},
            {"H4 preserves the encoded subspace", "projection-range-invariance"},
            {"builders Hermitian at all sampled times", "builder-hermiticity"},
            {"zero coupling gives the zero Hamiltonian",
             "zero-coupling-full-hamiltonian"},
            {"photon number conserved by the dispersive model",
             "photon-conservation-dispersive"},
            {"matched coupling is scale covariant", "matched-mu-scale-covariance"}}},
          {"ideal-gate",
           {{"closed form equals the integrated propagator",
             "closed-form-vs-propagator"},
            {"closed form realizes the gate at one gate time", "gate-realization"},
            {"ideal gate is involutory", "ideal-gate-involutory"},
            {"ideal output preserves norm", "ideal-output-norm"}}},
          {"dynamics",
           {{"norm conservation", "schrodinger-norm-conservation"},
            {"trace conservation, Hermiticity, positivity",
             "lindblad-trace-conservation, lindblad-hermiticity-positivity"},
            {"zero-rate Lindblad equals Schrodinger", "zero-rate-reduction"},
            {"photon number conserved by the dispersive model",
             "photon-conservation-dispersive"},
            {"virtual photons stay below the budget", "virtual-photon-bound"},
            {"full model agrees with the effective gate",
             "effective-model-agreement"},
            {"eight-state truth table", "truth-table-signs"}}}};
  nlohmann::json cov;
  for (const auto& [module_name, invariants] : coverage) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [invariant, check_names] : invariants) {
      rows.push_back({{"invariant", invariant}, {"checks", check_names}});
    }
    cov[module_name] = rows;
  }
  j["coverage"] = cov;
  return j.dump(2) + "\n";
}

}  // namespace qpg
