#pragma once

#include "qpgate/types.hpp"

namespace qpg {

/// Physical rates and detunings, all angular frequencies in units of mu1
/// (hbar = 1, mu1 = 1 by convention; time in units of 1/mu1).
///
/// Rates are uniform across qutrits: gamma_fe is the |f>->|e> relaxation
/// rate of every qutrit, gamma_fg and gamma_eg the |f>->|g> and |e>->|g>
/// rates, gamma_phi_f / gamma_phi_e the pure dephasing rates of |f> / |e>.
struct SystemParams {
  int n_qutrits = 3;
  double mu1 = 1.0;
  double mu = 3.08;          // coupling of qutrits 2..n
  double delta1 = 10.7;      // Delta_1, detuning of qutrit 1
  double delta_cap = 8.4;    // Delta, detuning of qutrits 2..n
  double kappa = 0.0;        // cavity decay
  double gamma_fe = 0.0;
  double gamma_fg = 0.0;
  double gamma_eg = 0.0;
  double gamma_phi_f = 0.0;
  double gamma_phi_e = 0.0;
  int fock_cutoff = 5;

  /// Throws ConfigError when any invariant is violated.
  void validate() const;

  friend bool operator==(const SystemParams& a, const SystemParams& b) = default;
};

/// Quantities derived from SystemParams.
struct DerivedParams {
  double delta_small = 0.0;        // delta = Delta_1 - Delta
  double lambda = 0.0;             // (mu*mu1/2)(1/Delta + 1/Delta_1)
  double gate_time = 0.0;          // t_g = delta*pi/lambda^2
  double stark_f1 = 0.0;           // mu1^2/Delta_1
  double cross_shift = 0.0;        // lambda^2/delta
  double matching_residual = 0.0;  // |mu1^2/Delta_1 - 2 lambda^2/delta| / (mu1^2/Delta_1)
};

DerivedParams derive(const SystemParams& params);

/// The unique positive mu that makes mu1^2/Delta_1 = 2 lambda^2/delta exact.
/// Requires Delta_1 > Delta > 0.
double matched_mu(double delta1, double delta_cap, double mu1);

}  // namespace qpg
