#pragma once

#include <complex>
#include <stdexcept>

namespace qpg {

using cplx = std::complex<double>;

inline constexpr cplx kImag{0.0, 1.0};

// Hard caps that turn runaway configurations into clean errors.
// States and operators are capped at kMaxStateDim entries per axis;
// density-matrix evolution is capped separately and lower.
inline constexpr std::size_t kMaxStateDim = 4096;
inline constexpr std::size_t kMaxDensityDim = 1024;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operator/space size violations ("dimension limit exceeded" and friends).
struct DimensionError : Error {
  using Error::Error;
};

// Bad parameters or configuration input.
struct ConfigError : Error {
  using Error::Error;
};

// Integrator or accuracy failures detected at run time.
struct NumericalError : Error {
  using Error::Error;
};

}  // namespace qpg
