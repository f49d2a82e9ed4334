#pragma once

#include "qpgate/types.hpp"

namespace qpg {

/// Conversion of the dimensionless (mu1 = 1) results into laboratory units.
struct UnitsReport {
  double mu1_rad_per_s = 0.0;
  double omega_c_rad_per_s = 0.0;
  double kappa_mu1 = 0.0;
  double kappa_rad_per_s = 0.0;
  double kappa_over_2pi_hz = 0.0;
  double gate_time_mu1 = 0.0;
  double gate_time_s = 0.0;
  double quality_factor = 0.0;  // Q = omega_c / kappa
};

UnitsReport physical_units_report(double mu1_rad_per_s, double omega_c_rad_per_s,
                                  double kappa_mu1, double gate_time_mu1);

std::string units_report_json(const UnitsReport& report);

}  // namespace qpg
