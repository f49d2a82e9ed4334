#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpgate/fidelity.hpp"
#include "qpgate/params.hpp"

namespace qpg {

inline constexpr const char* kToolVersion = "0.1.0";

/// Flat key = value run configuration. Unknown keys are parse errors; every
/// field round-trips through emit_config / parse_config bit-exactly.
struct RunConfig {
  std::string mode = "single";  // single | fig2 | fig3 | validate | converge | units
  SystemParams params;
  /// When set, params.mu is replaced by matched_mu(delta1, delta, mu1).
  bool mu_matched = true;
  std::vector<double> delta1_grid;
  std::vector<double> delta_small_grid;
  std::vector<double> gamma_grid;
  InputStateSpec input;
  std::optional<double> rel_tol;
  double abs_tol = 1e-10;
  int n_samples = 200;
  std::string out;
  int jobs = 1;

  static RunConfig defaults_for_mode(const std::string& mode);

  SystemParams effective_params() const;
  EvolutionConfig evolution_config() const;

  friend bool operator==(const RunConfig& a, const RunConfig& b) = default;
};

RunConfig parse_config(const std::string& text);
std::string emit_config(const RunConfig& cfg);

struct SweepRow {
  std::vector<double> values;  // aligned with SweepResult::columns
  bool valid = true;
};

struct SweepResult {
  std::string mode;
  std::vector<std::string> columns;
  std::vector<SweepRow> rows;  // lexicographic over the input grids
  std::string config_echo;     // deterministic; excludes execution-only keys
  std::string version;
  double wall_seconds = 0.0;   // not emitted into the CSV
};

/// For each (Delta_1, delta) grid point: Delta = Delta_1 - delta, mu from the
/// matching condition, one ideal-gate fidelity row. Points with delta <= 0 or
/// Delta <= 0 are emitted as invalid rows rather than crashing.
SweepResult run_fig2_sweep(const RunConfig& cfg);

/// Fidelity against the qutrit decoherence rate gamma: for gamma > 0 the
/// rates are gamma_phi_e = gamma_phi_f = gamma_fe = gamma_eg = gamma and
/// gamma_fg = 0.01 gamma with the configured cavity kappa; the gamma = 0 row
/// runs fully lossless and anchors the curve at the ideal value.
SweepResult run_fig3_curve(const RunConfig& cfg);

/// CSV with "# " metadata lines, a header row, and 9-significant-digit
/// values. Byte-identical for identical configs regardless of `jobs`.
std::string to_csv(const SweepResult& result);

struct SingleReport {
  DerivedParams derived;
  double mu = 0.0;
  bool lossy = false;
  double fidelity = 0.0;
  double max_photon = 0.0;
  double drift = 0.0;
};

/// One fidelity evaluation with the configured parameters and input; uses
/// the Lindblad pipeline when any rate is nonzero.
SingleReport run_single(const RunConfig& cfg);

/// 9-significant-digit, locale-independent float formatting used by every
/// CSV emitter.
std::string format_g9(double value);

}  // namespace qpg
