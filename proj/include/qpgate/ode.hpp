#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qpgate/types.hpp"

namespace qpg {

/// Integrator controls shared by both evolution engines. Unset optionals
/// fall back to per-engine defaults (rel 1e-8 for states, 1e-7 for density
/// matrices; max step 2*pi/(20*Delta_1) when the model is known).
struct EvolutionConfig {
  std::optional<double> rel_tol;
  double abs_tol = 1e-10;
  std::optional<double> max_step;
  std::optional<double> initial_step;
  std::size_t max_steps = 2'000'000;
  int n_samples = 200;
  std::size_t max_state_dim = kMaxStateDim;
  std::size_t max_density_dim = kMaxDensityDim;

  void validate() const;
};

using OdeRhs =
    std::function<void(double, const std::vector<cplx>&, std::vector<cplx>&)>;
/// Called after every accepted step with (t, y).
using StepObserver = std::function<void(double, const std::vector<cplx>&)>;

struct StepperStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evals = 0;
};

/// Embedded Dormand-Prince 5(4) pair with PI-free standard step control.
/// One instance carries its step size across integrate() calls so a
/// trajectory split into sample segments does not restart the ramp-up.
class AdaptiveRk45 {
 public:
  AdaptiveRk45(double rel_tol, double abs_tol, double max_step, double initial_step,
               std::size_t max_steps);

  /// Advances y from t0 to t1 in place. Throws NumericalError on step-count
  /// exhaustion or step-size underflow.
  void integrate(const OdeRhs& rhs, std::vector<cplx>& y, double t0, double t1,
                 const StepObserver& observer = nullptr);

  const StepperStats& stats() const { return stats_; }

 private:
  double error_norm(const std::vector<cplx>& err, const std::vector<cplx>& y0,
                    const std::vector<cplx>& y1) const;

  double rel_tol_;
  double abs_tol_;
  double max_step_;
  double h_;
  std::size_t max_steps_;
  StepperStats stats_;
};

}  // namespace qpg
