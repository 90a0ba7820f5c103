#pragma once

#include <stdexcept>
#include <string>

namespace krh {

/// Root iteration still above tolerance after the sweep budget.
struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A leading w-coefficient of a resultant operand vanished at the sample point.
struct DegenerateLeadingCoefficient : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raw power sums left the double range; use a scaled evaluation path instead.
struct PowerSumOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Cauchy-Schwarz violated beyond tolerance: catastrophic cancellation.
struct IntegrandDomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Conditional covariance not positive (semi)definite beyond tolerance.
struct DegenerateCovariance : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Argument increment per step stayed above pi/2 after all sample doublings.
struct PhaseStepTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// n = m with |lead p| = |lead q|: zeros may escape to infinity.
struct UnboundedZeroSet : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A variance profile was requested for a non-Gaussian ensemble kind.
struct NotGaussian : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Monte Carlo run exceeded the solver-failure budget.
struct TooManyFailures : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A root sits inside the real/complex decision band; the trial is unusable.
struct BoundaryAmbiguity : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace krh
