#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "krh/kac_rice.hpp"

namespace krh {

/// Covariance of (z P'(z), conj(z) Q'(conj z)) conditioned on H(z) = 0,
/// assembled by the Schur complement Gamma_1 - Gamma_12 Gamma_2^{-1}
/// Gamma_12^*; kept separate from the r-form used by the Kac-Rice integrand
/// so the two act as mutual oracles.
struct ConditionalCovariance {
  double gamma11 = 0.0;
  double gamma22 = 0.0;
  double gamma12 = 0.0;
  int n = 0;
  int m = 0;
  double w = 0.0;

  double determinant() const { return gamma11 * gamma22 - gamma12 * gamma12; }
};

/// Throws DegenerateCovariance when positive semidefiniteness fails beyond
/// -1e-12 relative. m = 0 yields a semidefinite matrix (gamma22 = 0), which
/// is accepted; pdf_Y and cdf_Y additionally require strict definiteness.
ConditionalCovariance conditional_covariance(const VarianceProfile& profile, double w);

/// Characteristic function of Y = |z P'|^2 - |conj(z) Q'|^2 given H(z) = 0:
///   1 / (1 + i t (g22 - g11) + t^2 (g11 g22 - g12^2)).
std::complex<double> char_function(const ConditionalCovariance& g, double t);

/// Closed-form density of Y (two-sided exponential with a kink at 0).
double pdf_Y(const ConditionalCovariance& g, double y);

/// Closed-form distribution function of Y.
double cdf_Y(const ConditionalCovariance& g, double y);

/// E|Y| = (g11^2 + g22^2 - 2 g12^2) / sqrt((g11 + g22)^2 - 4 g12^2).
double expected_abs_Y(const ConditionalCovariance& g);

/// Area intensity of zeros at |z|^2 = w: (1/w) E|Y| / (pi r3). Multiplied by
/// pi it must reproduce integrand_general.
double intensity_from_density(const VarianceProfile& profile, double w);

/// Monte Carlo draws of Y conditioned on H(z) = 0 via the Gaussian
/// regression identity Z1 - Gamma_12 Gamma_2^{-1} H (exact, no rejection).
std::vector<double> sample_conditioned_Y(const VarianceProfile& profile, double w,
                                         int count, std::uint64_t seed);

/// Kolmogorov-Smirnov distance between a sample and the closed-form CDF;
/// sorts a copy of the sample.
double ks_distance(std::vector<double> sample, const ConditionalCovariance& g);

}  // namespace krh
