#include "qpgate/params.hpp"

#include <cmath>
#include <limits>

namespace qpg {

void SystemParams::validate() const {
  if (n_qutrits < 2) throw ConfigError("need at least two qutrits");
  // Zero couplings are a meaningful degenerate case (nothing evolves).
  if (mu1 < 0.0 || mu < 0.0) throw ConfigError("couplings must be non-negative");
  if (delta1 <= 0.0 || delta_cap <= 0.0) {
    throw ConfigError("detunings must be positive");
  }
  if (delta1 == delta_cap) throw ConfigError("degenerate detunings");
  if (kappa < 0.0 || gamma_fe < 0.0 || gamma_fg < 0.0 || gamma_eg < 0.0 ||
      gamma_phi_f < 0.0 || gamma_phi_e < 0.0) {
    throw ConfigError("rates must be non-negative");
  }
  if (fock_cutoff < 1) throw ConfigError("cutoff too small to represent coupling");
}

DerivedParams derive(const SystemParams& params) {
  params.validate();
  DerivedParams d;
  d.delta_small = params.delta1 - params.delta_cap;
  if (d.delta_small == 0.0) throw ConfigError("degenerate detunings");
  d.lambda = 0.5 * params.mu * params.mu1 *
             (1.0 / params.delta_cap + 1.0 / params.delta1);
  // lambda = 0 only at zero coupling, where no phase needs to accumulate.
  d.gate_time =
      d.lambda > 0.0 ? d.delta_small * M_PI / (d.lambda * d.lambda) : 0.0;
  d.stark_f1 = params.mu1 * params.mu1 / params.delta1;
  d.cross_shift = d.lambda * d.lambda / d.delta_small;
  d.matching_residual =
      d.stark_f1 > 0.0
          ? std::abs(d.stark_f1 - 2.0 * d.cross_shift) / d.stark_f1
          : (d.cross_shift == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  return d;
}

double matched_mu(double delta1, double delta_cap, double mu1) {
  if (mu1 <= 0.0) throw ConfigError("couplings must be positive");
  const double delta_small = delta1 - delta_cap;
  if (delta_small <= 0.0 || delta_cap <= 0.0) {
    throw ConfigError("matching condition has no real solution");
  }
  // mu1^2/Delta_1 = 2 lambda^2/delta with lambda = (mu*mu1/2)(1/Delta+1/Delta_1)
  // solved for mu; mu1 cancels.
  return std::sqrt(2.0 * delta_small / delta1) /
         (1.0 / delta_cap + 1.0 / delta1);
}

}  // namespace qpg
