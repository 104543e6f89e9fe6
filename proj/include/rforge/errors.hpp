#pragma once

#include <stdexcept>
#include <string>

namespace rforge {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Empty or inconsistent domains, points outside them.
struct DomainError : Error {
  using Error::Error;
};

// Bad plain arguments (negative degree, gamma poles, non-unit determinants...).
struct ArgumentError : Error {
  using Error::Error;
};

// Input function is identically zero (or numerically indistinguishable from it).
struct DegenerateInput : Error {
  using Error::Error;
};

// eps_k >= eps_l in the finite-difference transformation.
struct OrderError : Error {
  using Error::Error;
};

// A claimed solution fails its defining equation beyond the input tolerance.
struct InvalidSolution : Error {
  using Error::Error;
};

// Gauge function gamma(x) vanishes on the working domain.
struct GaugeError : Error {
  using Error::Error;
};

// Factorization seed has nodes, so it is not a ground state.
struct NotGroundState : Error {
  using Error::Error;
};

// Mapped level must lie strictly above the factorization energy.
struct EnergyOrderError : Error {
  using Error::Error;
};

// Family parameters outside their admissible ranges.
struct ParameterError : Error {
  using Error::Error;
};

// Requested a normalizable eigenpair outside the admissible (l, q, k) set.
struct NotNormalizable : Error {
  using Error::Error;
};

// Adaptive quadrature ran out of depth; carries the best estimate.
struct ConvergenceError : Error {
  ConvergenceError(const std::string& what, double estimate_, double errorBound_)
      : Error(what), estimate(estimate_), errorBound(errorBound_) {}
  double estimate;
  double errorBound;
};

// A transformation produced a residual above the configured threshold.
struct ResidualError : Error {
  ResidualError(const std::string& what, double maxResidual_)
      : Error(what), maxResidual(maxResidual_) {}
  double maxResidual;
};

}  // namespace rforge
