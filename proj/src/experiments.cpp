#include "qpgate/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace qpg {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double x = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for config key '" + key + "': " + value);
  }
}

int parse_int(const std::string& key, const std::string& value) {
  const double x = parse_number(key, value);
  const int i = static_cast<int>(x);
  if (static_cast<double>(i) != x) {
    throw ConfigError("config key '" + key + "' expects an integer");
  }
  return i;
}

std::vector<double> parse_grid(const std::string& key, const std::string& value) {
  std::vector<double> grid;
  std::string item;
  std::stringstream ss(value);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("empty entry in grid '" + key + "'");
    grid.push_back(parse_number(key, item));
  }
  return grid;
}

std::string format_g17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string join_grid(const std::vector<double>& grid) {
  std::string out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i) out += ", ";
    out += format_g17(grid[i]);
  }
  return out;
}

std::string input_to_string(const InputStateSpec& input) {
  if (input.kind == InputStateSpec::Kind::kProductSuperposition) {
    return "paper-superposition";
  }
  return "bits:" + input.bits;
}

InputStateSpec input_from_string(const std::string& value) {
  if (value == "paper-superposition") return {};
  if (value.rfind("bits:", 0) == 0) {
    InputStateSpec spec;
    spec.kind = InputStateSpec::Kind::kBasis;
    spec.bits = value.substr(5);
    if (spec.bits.empty()) throw ConfigError("empty bitstring in input_state");
    for (char c : spec.bits) {
      if (c != '0' && c != '1') {
        throw ConfigError("bitstring may contain only 0 and 1");
      }
    }
    return spec;
  }
  throw ConfigError("unknown input_state selector: " + value);
}

const std::vector<std::string> kModes = {"single",   "fig2",     "fig3",
                                         "validate", "converge", "units"};

/// Runs fn(0..count-1) on a bounded pool; results land wherever fn writes
/// them, so row order never depends on scheduling.
void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& fn) {
  const int workers =
      std::max(1, std::min<int>(jobs, static_cast<int>(count)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::string config_echo_lines(const RunConfig& cfg) {
  // Execution-only keys (out, jobs) are excluded so identical physics
  // configs echo identically regardless of how they are run.
  std::string echo;
  RunConfig canonical = cfg;
  canonical.out.clear();
  canonical.jobs = 1;
  std::stringstream ss(emit_config(canonical));
  std::string line;
  while (std::getline(ss, line)) {
    if (line.rfind("out =", 0) == 0 || line.rfind("jobs =", 0) == 0) continue;
    echo += "# " + line + "\n";
  }
  return echo;
}

}  // namespace

RunConfig RunConfig::defaults_for_mode(const std::string& mode) {
  RunConfig cfg;
  cfg.mode = mode;
  if (mode == "fig2") {
    cfg.delta1_grid = {9.0, 10.7, 12.4, 14.1};
    cfg.delta_small_grid = {1.4, 2.3, 3.2};
  } else if (mode == "fig3") {
    cfg.params.kappa = 0.01;
    cfg.gamma_grid = {0.0, 5e-5, 1e-4, 2e-4, 5e-4, 1e-3};
  }
  return cfg;
}

SystemParams RunConfig::effective_params() const {
  SystemParams p = params;
  if (mu_matched) {
    p.mu = matched_mu(p.delta1, p.delta_cap, p.mu1);
  }
  p.validate();
  return p;
}

EvolutionConfig RunConfig::evolution_config() const {
  EvolutionConfig cfg;
  cfg.rel_tol = rel_tol;
  cfg.abs_tol = abs_tol;
  cfg.n_samples = n_samples;
  return cfg;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::vector<std::string> seen;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        " is not of the form key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty config key");
    for (const auto& s : seen) {
      if (s == key) throw ConfigError("duplicate config key: " + key);
    }
    seen.push_back(key);

    if (key == "mode") {
      bool known = false;
      for (const auto& m : kModes) known = known || m == value;
      if (!known) throw ConfigError("unknown mode: " + value);
      cfg.mode = value;
    } else if (key == "n_qutrits") {
      cfg.params.n_qutrits = parse_int(key, value);
    } else if (key == "mu1") {
      cfg.params.mu1 = parse_number(key, value);
    } else if (key == "mu") {
      if (value == "matched") {
        cfg.mu_matched = true;
      } else {
        cfg.mu_matched = false;
        cfg.params.mu = parse_number(key, value);
      }
    } else if (key == "delta1") {
      cfg.params.delta1 = parse_number(key, value);
    } else if (key == "delta") {
      cfg.params.delta_cap = parse_number(key, value);
    } else if (key == "kappa") {
      cfg.params.kappa = parse_number(key, value);
    } else if (key == "gamma_fe") {
      cfg.params.gamma_fe = parse_number(key, value);
    } else if (key == "gamma_fg") {
      cfg.params.gamma_fg = parse_number(key, value);
    } else if (key == "gamma_eg") {
      cfg.params.gamma_eg = parse_number(key, value);
    } else if (key == "gamma_phi_f") {
      cfg.params.gamma_phi_f = parse_number(key, value);
    } else if (key == "gamma_phi_e") {
      cfg.params.gamma_phi_e = parse_number(key, value);
    } else if (key == "fock_cutoff") {
      cfg.params.fock_cutoff = parse_int(key, value);
    } else if (key == "delta1_grid") {
      cfg.delta1_grid = parse_grid(key, value);
    } else if (key == "delta_small_grid") {
      cfg.delta_small_grid = parse_grid(key, value);
    } else if (key == "gamma_grid") {
      cfg.gamma_grid = parse_grid(key, value);
      for (double g : cfg.gamma_grid) {
        if (g < 0.0) throw ConfigError("negative gamma in gamma_grid");
      }
    } else if (key == "input_state") {
      cfg.input = input_from_string(value);
    } else if (key == "rel_tol") {
      if (value == "auto") {
        cfg.rel_tol.reset();
      } else {
        cfg.rel_tol = parse_number(key, value);
      }
    } else if (key == "abs_tol") {
      cfg.abs_tol = parse_number(key, value);
    } else if (key == "n_samples") {
      cfg.n_samples = parse_int(key, value);
    } else if (key == "out") {
      cfg.out = value;
    } else if (key == "jobs") {
      cfg.jobs = parse_int(key, value);
      if (cfg.jobs < 1) throw ConfigError("jobs must be at least 1");
    } else {
      throw ConfigError("unknown config key: " + key);
    }
  }
  return cfg;
}

std::string emit_config(const RunConfig& cfg) {
  std::string out;
  out += "mode = " + cfg.mode + "\n";
  out += "n_qutrits = " + std::to_string(cfg.params.n_qutrits) + "\n";
  out += "mu1 = " + format_g17(cfg.params.mu1) + "\n";
  out += "mu = " + (cfg.mu_matched ? std::string("matched")
                                   : format_g17(cfg.params.mu)) +
         "\n";
  out += "delta1 = " + format_g17(cfg.params.delta1) + "\n";
  out += "delta = " + format_g17(cfg.params.delta_cap) + "\n";
  out += "kappa = " + format_g17(cfg.params.kappa) + "\n";
  out += "gamma_fe = " + format_g17(cfg.params.gamma_fe) + "\n";
  out += "gamma_fg = " + format_g17(cfg.params.gamma_fg) + "\n";
  out += "gamma_eg = " + format_g17(cfg.params.gamma_eg) + "\n";
  out += "gamma_phi_f = " + format_g17(cfg.params.gamma_phi_f) + "\n";
  out += "gamma_phi_e = " + format_g17(cfg.params.gamma_phi_e) + "\n";
  out += "fock_cutoff = " + std::to_string(cfg.params.fock_cutoff) + "\n";
  out += "delta1_grid = " + join_grid(cfg.delta1_grid) + "\n";
  out += "delta_small_grid = " + join_grid(cfg.delta_small_grid) + "\n";
  out += "gamma_grid = " + join_grid(cfg.gamma_grid) + "\n";
  out += "input_state = " + input_to_string(cfg.input) + "\n";
  out += "rel_tol = " +
         (cfg.rel_tol ? format_g17(*cfg.rel_tol) : std::string("auto")) + "\n";
  out += "abs_tol = " + format_g17(cfg.abs_tol) + "\n";
  out += "n_samples = " + std::to_string(cfg.n_samples) + "\n";
  out += "out = " + cfg.out + "\n";
  out += "jobs = " + std::to_string(cfg.jobs) + "\n";
  return out;
}

std::string format_g9(double value) {
  if (std::isnan(value)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

SweepResult run_fig2_sweep(const RunConfig& cfg) {
  if (cfg.delta1_grid.empty() || cfg.delta_small_grid.empty()) {
    throw ConfigError("fig2 requires delta1_grid and delta_small_grid");
  }
  const auto start = std::chrono::steady_clock::now();
  SweepResult result;
  result.mode = "fig2";
  result.columns = {"delta1",    "delta_small", "delta",      "mu",
                    "gate_time", "fidelity",    "max_photon", "norm_drift"};
  result.version = kToolVersion;
  result.config_echo = config_echo_lines(cfg);

  const std::size_t n1 = cfg.delta1_grid.size();
  const std::size_t n2 = cfg.delta_small_grid.size();
  result.rows.assign(n1 * n2, SweepRow{});
  const EvolutionConfig ecfg = cfg.evolution_config();

  parallel_for(n1 * n2, cfg.jobs, [&](std::size_t idx) {
    const double d1 = cfg.delta1_grid[idx / n2];
    const double ds = cfg.delta_small_grid[idx % n2];
    const double dc = d1 - ds;
    SweepRow& row = result.rows[idx];
    if (ds <= 0.0 || dc <= 0.0 || d1 <= 0.0) {
      row.valid = false;
      row.values = {d1, ds, dc, kNaN, kNaN, kNaN, kNaN, kNaN};
      return;
    }
    SystemParams p = cfg.params;
    p.delta1 = d1;
    p.delta_cap = dc;
    p.mu = matched_mu(d1, dc, p.mu1);
    const HilbertSpace space(p.n_qutrits, p.fock_cutoff);
    const GateRun run = run_gate_ideal(p, cfg.input.make(space), ecfg);
    row.values = {d1,
                  ds,
                  dc,
                  p.mu,
                  run.derived.gate_time,
                  run.fidelity,
                  run.max_photon,
                  run.drift};
  });

  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

SweepResult run_fig3_curve(const RunConfig& cfg) {
  if (cfg.gamma_grid.empty()) throw ConfigError("fig3 requires gamma_grid");
  for (double g : cfg.gamma_grid) {
    if (g < 0.0) throw ConfigError("negative gamma in gamma_grid");
  }
  const auto start = std::chrono::steady_clock::now();
  SweepResult result;
  result.mode = "fig3";
  result.columns = {"gamma",     "gamma_fg", "kappa",      "mu",
                    "gate_time", "fidelity", "max_photon", "trace_drift"};
  result.version = kToolVersion;
  result.config_echo = config_echo_lines(cfg);

  const SystemParams base = cfg.effective_params();
  result.rows.assign(cfg.gamma_grid.size(), SweepRow{});
  const EvolutionConfig ecfg = cfg.evolution_config();

  parallel_for(cfg.gamma_grid.size(), cfg.jobs, [&](std::size_t idx) {
    const double gamma = cfg.gamma_grid[idx];
    SystemParams p = base;
    if (gamma == 0.0) {
      // Lossless anchor row: the zero-rate Lindblad run must land on the
      // ideal value, so every rate (kappa included) is switched off.
      p.kappa = 0.0;
    }
    p.gamma_fe = gamma;
    p.gamma_eg = gamma;
    p.gamma_phi_f = gamma;
    p.gamma_phi_e = gamma;
    p.gamma_fg = 0.01 * gamma;
    const HilbertSpace space(p.n_qutrits, p.fock_cutoff);
    const GateRun run = run_gate_lossy(p, cfg.input.make(space), ecfg);
    result.rows[idx].values = {gamma,
                               p.gamma_fg,
                               p.kappa,
                               p.mu,
                               run.derived.gate_time,
                               run.fidelity,
                               run.max_photon,
                               run.drift};
  });

  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

std::string to_csv(const SweepResult& result) {
  std::string out;
  out += "# qpgate " + result.version + " " + result.mode + "\n";
  out += result.config_echo;
  for (std::size_t c = 0; c < result.columns.size(); ++c) {
    if (c) out += ",";
    out += result.columns[c];
  }
  out += ",status\n";
  for (const auto& row : result.rows) {
    for (std::size_t c = 0; c < row.values.size(); ++c) {
      if (c) out += ",";
      out += format_g9(row.values[c]);
    }
    out += row.valid ? ",ok\n" : ",invalid\n";
  }
  return out;
}

SingleReport run_single(const RunConfig& cfg) {
  const SystemParams p = cfg.effective_params();
  const HilbertSpace space(p.n_qutrits, p.fock_cutoff);
  const QuantumState input = cfg.input.make(space);
  const EvolutionConfig ecfg = cfg.evolution_config();
  const bool lossy = p.kappa > 0.0 || p.gamma_fe > 0.0 || p.gamma_fg > 0.0 ||
                     p.gamma_eg > 0.0 || p.gamma_phi_f > 0.0 || p.gamma_phi_e > 0.0;
  const GateRun run = lossy ? run_gate_lossy(p, input, ecfg)
                            : run_gate_ideal(p, input, ecfg);
  SingleReport report;
  report.derived = run.derived;
  report.mu = p.mu;
  report.lossy = lossy;
  report.fidelity = run.fidelity;
  report.max_photon = run.max_photon;
  report.drift = run.drift;
  return report;
}

}  // namespace qpg
