#include "qpgate/units.hpp"

#include <cmath>

#include <json.hpp>

namespace qpg {

UnitsReport physical_units_report(double mu1_rad_per_s, double omega_c_rad_per_s,
                                  double kappa_mu1, double gate_time_mu1) {
  if (mu1_rad_per_s <= 0.0 || omega_c_rad_per_s <= 0.0 || kappa_mu1 <= 0.0 ||
      gate_time_mu1 <= 0.0) {
    throw ConfigError("physical unit inputs must be positive");
  }
  UnitsReport r;
  r.mu1_rad_per_s = mu1_rad_per_s;
  r.omega_c_rad_per_s = omega_c_rad_per_s;
  r.kappa_mu1 = kappa_mu1;
  r.kappa_rad_per_s = kappa_mu1 * mu1_rad_per_s;
  r.kappa_over_2pi_hz = r.kappa_rad_per_s / (2.0 * M_PI);
  r.gate_time_mu1 = gate_time_mu1;
  r.gate_time_s = gate_time_mu1 / mu1_rad_per_s;
  r.quality_factor = omega_c_rad_per_s / r.kappa_rad_per_s;
  return r;
}

std::string units_report_json(const UnitsReport& report) {
  nlohmann::json j;
  j["mu1_rad_per_s"] = report.mu1_rad_per_s;
  j["omega_c_rad_per_s"] = report.omega_c_rad_per_s;
  j["kappa_mu1"] = report.kappa_mu1;
  j["kappa_rad_per_s"] = report.kappa_rad_per_s;
  j["kappa_over_2pi_hz"] = report.kappa_over_2pi_hz;
  j["gate_time_mu1"] = report.gate_time_mu1;
  j["gate_time_s"] = report.gate_time_s;
  j["quality_factor"] = report.quality_factor;
  return j.dump(2) + "\n";
}

}  // namespace qpg
