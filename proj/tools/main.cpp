#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qpgate/experiments.hpp"
#include "qpgate/gate.hpp"
#include "qpgate/units.hpp"
#include "qpgate/validate.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  int jobs = 0;          // 0 = keep config value
  unsigned seed = 0;     // reserved; no stochastic components currently
  bool verbose = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "Path to a key = value config file");
  cmd->add_option("--out", opts.out_path, "Output path (default: stdout)");
  cmd->add_option("--jobs", opts.jobs, "Worker pool size for sweeps");
  cmd->add_option("--seed", opts.seed, "Reserved");
  cmd->add_flag("--verbose", opts.verbose, "Chatty progress on stderr");
}

qpg::RunConfig load_config(const CommonOptions& opts, const std::string& mode) {
  qpg::RunConfig cfg = qpg::RunConfig::defaults_for_mode(mode);
  if (!opts.config_path.empty()) {
    std::ifstream in(opts.config_path);
    if (!in) throw qpg::ConfigError("cannot open config file: " + opts.config_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    cfg = qpg::parse_config(buffer.str());
  }
  cfg.mode = mode;
  if (!opts.out_path.empty()) cfg.out = opts.out_path;
  if (opts.jobs > 0) cfg.jobs = opts.jobs;
  return cfg;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qpg::ConfigError("cannot open output file: " + path);
  out << content;
}

int run_sweep(const CommonOptions& opts, const std::string& mode) {
  const qpg::RunConfig cfg = load_config(opts, mode);
  const qpg::SweepResult result =
      mode == "fig2" ? qpg::run_fig2_sweep(cfg) : qpg::run_fig3_curve(cfg);
  write_output(cfg.out, qpg::to_csv(result));
  if (opts.verbose) {
    std::cerr << mode << ": " << result.rows.size() << " rows in "
              << result.wall_seconds << " s\n";
  }
  return 0;
}

int run_single_cmd(const CommonOptions& opts, bool truth_table_only) {
  const qpg::RunConfig cfg = load_config(opts, "single");
  if (truth_table_only) {
    write_output(cfg.out, qpg::truth_table(cfg.params.n_qutrits));
    return 0;
  }
  const qpg::SingleReport rep = qpg::run_single(cfg);
  std::string out;
  out += "mu = " + qpg::format_g9(rep.mu) + "\n";
  out += "delta_small = " + qpg::format_g9(rep.derived.delta_small) + "\n";
  out += "lambda = " + qpg::format_g9(rep.derived.lambda) + "\n";
  out += "gate_time = " + qpg::format_g9(rep.derived.gate_time) + "\n";
  out += "matching_residual = " + qpg::format_g9(rep.derived.matching_residual) + "\n";
  out += "pipeline = " + std::string(rep.lossy ? "lindblad" : "schrodinger") + "\n";
  out += "fidelity = " + qpg::format_g9(rep.fidelity) + "\n";
  out += "max_photon = " + qpg::format_g9(rep.max_photon) + "\n";
  out += "drift = " + qpg::format_g9(rep.drift) + "\n";
  write_output(cfg.out, out);
  return 0;
}

int run_validate(const CommonOptions& opts, bool quick) {
  const qpg::RunConfig cfg = load_config(opts, "validate");
  const qpg::ValidationReport report = qpg::run_validation_suite(cfg, quick);
  write_output(cfg.out, qpg::validation_report_json(report));
  if (opts.verbose) {
    for (const auto& c : report.checks) {
      std::cerr << (c.passed ? "pass " : "FAIL ") << c.module_name << "/" << c.name
                << " measured=" << c.measured << " threshold=" << c.threshold
                << "\n";
    }
  }
  return report.all_passed ? 0 : 1;
}

int run_converge(const CommonOptions& opts) {
  const qpg::RunConfig cfg = load_config(opts, "converge");
  const qpg::ConvergenceReport report = qpg::convergence_study(
      cfg.effective_params(), cfg.input, cfg.evolution_config());
  std::string out = "fock_cutoff,rel_tol,fidelity,change\n";
  for (const auto& row : report.rows) {
    out += std::to_string(row.fock_cutoff) + "," + qpg::format_g9(row.rel_tol) + "," +
           qpg::format_g9(row.fidelity) + "," + qpg::format_g9(row.change) + "\n";
  }
  out += std::string("# converged = ") + (report.converged ? "true" : "false") + "\n";
  if (report.converged) {
    out += "# converged_cutoff = " + std::to_string(report.converged_cutoff) + "\n";
    out += "# converged_rel_tol = " + qpg::format_g9(report.converged_rel_tol) + "\n";
    out += "# fidelity = " + qpg::format_g9(report.fidelity) + "\n";
  }
  write_output(cfg.out, out);
  if (!report.converged) {
    std::cerr << "convergence not reached by cutoff 32\n";
    return 3;
  }
  return 0;
}

int run_units(const CommonOptions& opts, double mu1_2pi_mhz, double wc_2pi_ghz,
              double kappa_mu1) {
  const qpg::RunConfig cfg = load_config(opts, "units");
  const double gate_time = qpg::derive(cfg.effective_params()).gate_time;
  const double mu1 = 2.0 * M_PI * mu1_2pi_mhz * 1e6;
  const double wc = 2.0 * M_PI * wc_2pi_ghz * 1e9;
  const qpg::UnitsReport report =
      qpg::physical_units_report(mu1, wc, kappa_mu1, gate_time);
  write_output(cfg.out, qpg::units_report_json(report));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qpgate - one-step controlled-phase gate simulator for qutrits\n"
      "dispersively coupled to a single cavity mode"};
  app.require_subcommand(1);

  CommonOptions opts;
  bool truth_table_only = false;
  bool quick = false;
  double mu1_2pi_mhz = 85.0;
  double wc_2pi_ghz = 5.09;
  double kappa_mu1 = 0.01;

  CLI::App* single = app.add_subcommand(
      "single", "One fidelity evaluation at the configured parameters");
  single->add_flag("--truth-table", truth_table_only,
                   "Print the logical truth table and exit");
  CLI::App* fig2 = app.add_subcommand(
      "fig2", "Ideal-gate fidelity over a (Delta_1, delta) grid (CSV)");
  CLI::App* fig3 = app.add_subcommand(
      "fig3", "Lossy fidelity against the qutrit decoherence rate (CSV)");
  CLI::App* validate =
      app.add_subcommand("validate", "Run the invariant suite (JSON report)");
  validate->add_flag("--quick", quick, "Skip the long Lindblad-backed checks");
  CLI::App* converge = app.add_subcommand(
      "converge", "Fock-cutoff and tolerance convergence study (CSV)");
  CLI::App* units = app.add_subcommand(
      "units", "Convert dimensionless results into laboratory units (JSON)");
  units->add_option("--mu1-2pi-mhz", mu1_2pi_mhz, "mu1 / 2pi in MHz");
  units->add_option("--wc-2pi-ghz", wc_2pi_ghz, "omega_c / 2pi in GHz");
  units->add_option("--kappa-mu1", kappa_mu1, "kappa in units of mu1");

  for (CLI::App* cmd : {single, fig2, fig3, validate, converge, units}) {
    add_common(cmd, opts);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (single->parsed()) return run_single_cmd(opts, truth_table_only);
    if (fig2->parsed()) return run_sweep(opts, "fig2");
    if (fig3->parsed()) return run_sweep(opts, "fig3");
    if (validate->parsed()) return run_validate(opts, quick);
    if (converge->parsed()) return run_converge(opts);
    if (units->parsed()) return run_units(opts, mu1_2pi_mhz, wc_2pi_ghz, kappa_mu1);
  } catch (const qpg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qpg::DimensionError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qpg::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
