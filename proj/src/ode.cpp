#include "qpgate/ode.hpp"

#include <algorithm>
#include <cmath>

namespace qpg {

void EvolutionConfig::validate() const {
  if ((rel_tol && *rel_tol <= 0.0) || abs_tol <= 0.0) {
    throw ConfigError("tolerances must be positive");
  }
  if (max_step && *max_step <= 0.0) throw ConfigError("max step must be positive");
  if (initial_step && *initial_step <= 0.0) {
    throw ConfigError("initial step must be positive");
  }
  if (n_samples < 1) throw ConfigError("need at least one trajectory sample");
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC2 = 1.0 / 5.0, kC3 = 3.0 / 10.0, kC4 = 4.0 / 5.0,
                 kC5 = 8.0 / 9.0;
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0,
                 kA63 = 46732.0 / 5247.0, kA64 = 49.0 / 176.0,
                 kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
// y5 - y4 error weights.
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0, kE4 = 71.0 / 1920.0,
                 kE5 = -17253.0 / 339200.0, kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

}  // namespace

AdaptiveRk45::AdaptiveRk45(double rel_tol, double abs_tol, double max_step,
                           double initial_step, std::size_t max_steps)
    : rel_tol_(rel_tol),
      abs_tol_(abs_tol),
      max_step_(max_step),
      h_(initial_step > 0.0 ? std::min(initial_step, max_step) : max_step / 10.0),
      max_steps_(max_steps) {
  if (rel_tol <= 0.0 || abs_tol <= 0.0 || max_step <= 0.0) {
    throw ConfigError("tolerances and step bounds must be positive");
  }
}

double AdaptiveRk45::error_norm(const std::vector<cplx>& err,
                                const std::vector<cplx>& y0,
                                const std::vector<cplx>& y1) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < err.size(); ++i) {
    const double scale =
        abs_tol_ + rel_tol_ * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double e = std::abs(err[i]) / scale;
    acc += e * e;
  }
  return std::sqrt(acc / static_cast<double>(err.size()));
}

void AdaptiveRk45::integrate(const OdeRhs& rhs, std::vector<cplx>& y, double t0,
                             double t1, const StepObserver& observer) {
  if (t1 < t0) throw ConfigError("cannot integrate backwards");
  if (t1 == t0) return;

  const std::size_t n = y.size();
  std::vector<cplx> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  std::vector<cplx> ytmp(n), ynew(n), yerr(n);

  double t = t0;
  rhs(t, y, k1);
  ++stats_.rhs_evals;
  bool k1_fresh = true;

  while (t < t1) {
    const double remaining = t1 - t;
    if (remaining <= 1e-14 * std::max(1.0, std::abs(t1))) break;
    if (stats_.accepted + stats_.rejected >= max_steps_) {
      throw NumericalError("step-count guard exceeded");
    }
    double h = std::min(h_, remaining);
    if (h < 1e-14 * std::max(1.0, std::abs(t))) {
      throw NumericalError("step size underflow");
    }
    if (!k1_fresh) {
      rhs(t, y, k1);
      ++stats_.rhs_evals;
      k1_fresh = true;
    }

    for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (kA21 * k1[i]);
    rhs(t + kC2 * h, ytmp, k2);
    for (std::size_t i = 0; i < n; ++i) {
      ytmp[i] = y[i] + h * (kA31 * k1[i] + kA32 * k2[i]);
    }
    rhs(t + kC3 * h, ytmp, k3);
    for (std::size_t i = 0; i < n; ++i) {
      ytmp[i] = y[i] + h * (kA41 * k1[i] + kA42 * k2[i] + kA43 * k3[i]);
    }
    rhs(t + kC4 * h, ytmp, k4);
    for (std::size_t i = 0; i < n; ++i) {
      ytmp[i] = y[i] + h * (kA51 * k1[i] + kA52 * k2[i] + kA53 * k3[i] + kA54 * k4[i]);
    }
    rhs(t + kC5 * h, ytmp, k5);
    for (std::size_t i = 0; i < n; ++i) {
      ytmp[i] = y[i] + h * (kA61 * k1[i] + kA62 * k2[i] + kA63 * k3[i] +
                            kA64 * k4[i] + kA65 * k5[i]);
    }
    rhs(t + h, ytmp, k6);
    for (std::size_t i = 0; i < n; ++i) {
      ynew[i] = y[i] + h * (kB1 * k1[i] + kB3 * k3[i] + kB4 * k4[i] + kB5 * k5[i] +
                            kB6 * k6[i]);
    }
    rhs(t + h, ynew, k7);
    stats_.rhs_evals += 6;

    for (std::size_t i = 0; i < n; ++i) {
      yerr[i] = h * (kE1 * k1[i] + kE3 * k3[i] + kE4 * k4[i] + kE5 * k5[i] +
                     kE6 * k6[i] + kE7 * k7[i]);
    }
    const double err = error_norm(yerr, y, ynew);

    if (err <= 1.0) {
      t += h;
      y.swap(ynew);
      k1.swap(k7);  // FSAL
      k1_fresh = true;
      ++stats_.accepted;
      if (observer) observer(t, y);
    } else {
      k1_fresh = true;  // y unchanged, k1 still valid
      ++stats_.rejected;
    }

    const double factor =
        (err == 0.0) ? 5.0
                     : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h_ = std::min(h * factor, max_step_);
  }
}

}  // namespace qpg
