#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qpgate/experiments.hpp"
#include "qpgate/units.hpp"
#include "qpgate/validate.hpp"

using namespace qpg;

TEST_CASE("config round-trips through emit and parse") {
  RunConfig cfg = RunConfig::defaults_for_mode("fig2");
  cfg.params.n_qutrits = 2;
  cfg.params.fock_cutoff = 3;
  cfg.params.kappa = 1.25e-2;
  cfg.delta1_grid = {9.0, 10.7, 0.1234567890123456789};
  cfg.gamma_grid = {0.0, 2e-4};
  cfg.rel_tol = 3e-9;
  cfg.input.kind = InputStateSpec::Kind::kBasis;
  cfg.input.bits = "01";
  cfg.out = "sweep.csv";
  cfg.jobs = 4;
  const RunConfig parsed = parse_config(emit_config(cfg));
  CHECK(parsed == cfg);

  RunConfig matched = RunConfig::defaults_for_mode("fig3");
  matched.mu_matched = true;
  CHECK(parse_config(emit_config(matched)) == matched);

  RunConfig explicit_mu = matched;
  explicit_mu.mu_matched = false;
  explicit_mu.params.mu = 3.08;
  CHECK(parse_config(emit_config(explicit_mu)) == explicit_mu);
}

TEST_CASE("config parser rejects malformed input") {
  CHECK_THROWS_WITH_AS(parse_config("typo_key = 1\n"),
                       "unknown config key: typo_key", ConfigError);
  CHECK_THROWS_AS(parse_config("mode = fig9\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("mu1 = abc\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("mu1 = 1.0\nmu1 = 2.0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("gamma_grid = 1e-4, -1e-4\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("just a line\n"), ConfigError);
  SUBCASE("scientific notation and comments are fine") {
    const RunConfig cfg =
        parse_config("# comment\nkappa = 1e-2  # trailing\n\nmu = matched\n");
    CHECK(cfg.params.kappa == 1e-2);
    CHECK(cfg.mu_matched);
  }
}

TEST_CASE("csv float formatting uses nine significant digits") {
  CHECK(format_g9(0.123456789012) == "0.123456789");
  CHECK(format_g9(1.0) == "1");
  CHECK(format_g9(2e-4) == "0.0002");
  CHECK(format_g9(6.72300827e1) == "67.2300827");
  CHECK(format_g9(std::nan("")) == "nan");
}

TEST_CASE("fig2 sweep: rows, invalid points, determinism") {
  RunConfig cfg = RunConfig::defaults_for_mode("fig2");
  cfg.params.n_qutrits = 2;
  cfg.params.fock_cutoff = 1;
  cfg.delta1_grid = {10.7, 12.0};
  cfg.delta_small_grid = {2.3, 10.7};  // second pairs to delta <= 0 at 10.7
  cfg.jobs = 1;

  const SweepResult result = run_fig2_sweep(cfg);
  REQUIRE(result.rows.size() == 4);

  SUBCASE("grid order is lexicographic and invalid rows are flagged") {
    CHECK(result.rows[0].valid);
    CHECK_FALSE(result.rows[1].valid);  // (10.7, 10.7) -> Delta = 0
    CHECK(result.rows[2].valid);
    CHECK(result.rows[3].valid);  // (12.0, 10.7) -> Delta = 1.3 is legal
    CHECK(result.rows[0].values[0] == 10.7);
    CHECK(result.rows[0].values[1] == 2.3);
    CHECK(result.rows[1].values[0] == 10.7);
    CHECK(result.rows[1].values[1] == 10.7);
  }
  SUBCASE("matched point carries a high fidelity") {
    CHECK(result.rows[0].values[5] >= 0.97);
    for (const auto& row : result.rows) {
      if (!row.valid) continue;
      CHECK(row.values[5] >= 0.0);
      CHECK(row.values[5] <= 1.0 + 1e-9);
    }
  }
  SUBCASE("csv is byte-identical across worker counts") {
    const std::string csv1 = to_csv(result);
    RunConfig parallel = cfg;
    parallel.jobs = 8;
    const std::string csv8 = to_csv(run_fig2_sweep(parallel));
    CHECK(csv1 == csv8);
    CHECK(csv1.find("delta1,delta_small,delta,mu,gate_time,fidelity,max_photon,"
                    "norm_drift,status") != std::string::npos);
    CHECK(csv1.find(",invalid") != std::string::npos);
  }
  SUBCASE("missing grids are a config error") {
    RunConfig empty = cfg;
    empty.delta1_grid.clear();
    CHECK_THROWS_AS(run_fig2_sweep(empty), ConfigError);
  }
}

TEST_CASE("fig3 curve: anchor row, monotonicity, csv shape") {
  RunConfig cfg = RunConfig::defaults_for_mode("fig3");
  cfg.params.n_qutrits = 2;
  cfg.params.fock_cutoff = 1;
  cfg.gamma_grid = {0.0, 1e-3};
  cfg.jobs = 2;

  const SweepResult result = run_fig3_curve(cfg);
  REQUIRE(result.rows.size() == 2);

  const HilbertSpace space(2, 1);
  const double f_ideal =
      gate_fidelity_ideal(cfg.effective_params(), product_superposition_state(space));
  CHECK(std::abs(result.rows[0].values[5] - f_ideal) <= 1e-6);
  CHECK(result.rows[0].values[2] == 0.0);   // kappa off on the anchor row
  CHECK(result.rows[1].values[2] == 0.01);  // configured kappa elsewhere
  CHECK(result.rows[1].values[1] == doctest::Approx(1e-5));  // gamma_fg = 0.01 gamma
  CHECK(result.rows[1].values[5] < result.rows[0].values[5]);

  const std::string csv = to_csv(result);
  CHECK(csv.find("gamma,gamma_fg,kappa,mu,gate_time,fidelity,max_photon,"
                 "trace_drift,status") != std::string::npos);
}

TEST_CASE("single run report") {
  RunConfig cfg = RunConfig::defaults_for_mode("single");
  cfg.params.n_qutrits = 2;
  cfg.params.fock_cutoff = 1;
  const SingleReport rep = run_single(cfg);
  CHECK_FALSE(rep.lossy);
  CHECK(rep.fidelity >= 0.97);
  CHECK(rep.derived.matching_residual <= 1e-12);

  cfg.params.kappa = 0.01;
  const SingleReport lossy = run_single(cfg);
  CHECK(lossy.lossy);
  CHECK(lossy.fidelity < rep.fidelity);
}

TEST_CASE("physical units reproduce the quoted laboratory numbers") {
  const double mu1 = 2.0 * M_PI * 85e6;
  const double wc = 2.0 * M_PI * 5.09e9;
  const double gate_time = 2.0 * M_PI * 10.7;
  const UnitsReport r = physical_units_report(mu1, wc, 0.01, gate_time);

  // Q = omega_c / kappa with kappa = 0.01 mu1; the quoted 5.97e3 rounds
  // kappa to 2 pi x 0.85 MHz.
  CHECK(r.quality_factor == doctest::Approx(5.99e3).epsilon(2e-3));
  CHECK(std::abs(r.quality_factor - 5.97e3) / 5.97e3 <= 0.01);
  // t_g = 2 pi 10.7 / mu1 = 10.7 / 85 MHz.
  CHECK(r.gate_time_s == doctest::Approx(10.7 / 85e6).epsilon(1e-12));
  CHECK(r.gate_time_s == doctest::Approx(126e-9).epsilon(0.01));
  CHECK(r.kappa_over_2pi_hz == doctest::Approx(0.85e6).epsilon(1e-12));

  CHECK_THROWS_AS(physical_units_report(-1.0, wc, 0.01, gate_time), ConfigError);
  CHECK_THROWS_AS(physical_units_report(mu1, wc, 0.0, gate_time), ConfigError);
}

TEST_CASE("validation suite quick pass and corrupt config") {
  RunConfig cfg = RunConfig::defaults_for_mode("validate");
  cfg.params.n_qutrits = 2;
  cfg.params.fock_cutoff = 2;
  const ValidationReport report = run_validation_suite(cfg, /*quick=*/true);
  CHECK(report.config_valid);
  CHECK(report.all_passed);

  const std::string json = validation_report_json(report);
  CHECK(json.find("\"coverage\"") != std::string::npos);
  CHECK(json.find("projection-identity") != std::string::npos);
  CHECK(json.find("\"failed\": 0") != std::string::npos);

  SUBCASE("degenerate detunings are reported, not thrown") {
    RunConfig bad = cfg;
    bad.params.delta_cap = bad.params.delta1;
    bad.mu_matched = false;
    const ValidationReport rejected = run_validation_suite(bad, true);
    CHECK_FALSE(rejected.config_valid);
    CHECK_FALSE(rejected.all_passed);
    CHECK(validation_report_json(rejected).find("degenerate detunings") !=
          std::string::npos);
  }
}
