#include "krh/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "krh/cpoly.hpp"
#include "krh/errors.hpp"
#include "krh/rng.hpp"

namespace krh {

namespace {

struct HalfSums {
  double a = 0.0;  // sum v_j w^j
  double b = 0.0;  // sum j v_j w^j
  double c = 0.0;  // sum j^2 v_j w^j
};

// Plain summation, deliberately independent of the kac_rice closed forms.
HalfSums half_sums(const std::vector<double>& vars, double w) {
  HalfSums s;
  double wj = 1.0;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    double dj = static_cast<double>(j);
    s.a += vars[j] * wj;
    s.b += dj * vars[j] * wj;
    s.c += dj * dj * vars[j] * wj;
    wj *= w;
  }
  return s;
}

struct RateSplit {
  double dplus;      // sqrt((g11+g22)^2 - 4 g12^2)
  double diff;       // g22 - g11
  double rate_neg;   // decay rate on y < 0
  double rate_pos;   // decay rate on y > 0
};

RateSplit rates(const ConditionalCovariance& g) {
  double det = g.determinant();
  if (!(det > 0.0))
    throw std::invalid_argument("pdf_Y/cdf_Y: strictly positive definite covariance required");
  double sum = g.gamma11 + g.gamma22;
  double dplus = std::sqrt(std::max(sum * sum - 4.0 * g.gamma12 * g.gamma12, 0.0));
  double diff = g.gamma22 - g.gamma11;
  return {dplus, diff, (dplus - diff) / (2.0 * det), (dplus + diff) / (2.0 * det)};
}

}  // namespace

ConditionalCovariance conditional_covariance(const VarianceProfile& profile, double w) {
  if (!(w > 0.0)) throw std::invalid_argument("conditional_covariance: w must be positive");
  profile.validate();
  HalfSums p = half_sums(profile.alphas, w);
  HalfSums q = half_sums(profile.betas, w);
  double r3 = p.a + q.a;  // Gamma_2 = E|H|^2

  ConditionalCovariance g;
  g.n = profile.n();
  g.m = profile.m();
  g.w = w;
  // Gamma_1 = diag(c_p, c_q), Gamma_12 = (b_p, b_q)^T, Schur complement:
  g.gamma11 = p.c - p.b * p.b / r3;
  g.gamma22 = q.c - q.b * q.b / r3;
  g.gamma12 = -p.b * q.b / r3;

  double scale = std::max(g.gamma11 * g.gamma22, g.gamma12 * g.gamma12);
  double det = g.determinant();
  if (det < -1e-12 * std::max(scale, 1e-300) || g.gamma11 < 0.0 || g.gamma22 < 0.0)
    throw DegenerateCovariance("conditional_covariance: not positive semidefinite");
  return g;
}

std::complex<double> char_function(const ConditionalCovariance& g, double t) {
  std::complex<double> denom{1.0 + t * t * g.determinant(),
                             t * (g.gamma22 - g.gamma11)};
  return 1.0 / denom;
}

double pdf_Y(const ConditionalCovariance& g, double y) {
  RateSplit r = rates(g);
  double rate = y >= 0.0 ? r.rate_pos : r.rate_neg;
  return std::exp(-std::abs(y) * rate) / r.dplus;
}

double cdf_Y(const ConditionalCovariance& g, double y) {
  RateSplit r = rates(g);
  if (y <= 0.0) return std::exp(y * r.rate_neg) / (r.dplus * r.rate_neg);
  return 1.0 - std::exp(-y * r.rate_pos) / (r.dplus * r.rate_pos);
}

double expected_abs_Y(const ConditionalCovariance& g) {
  double sum = g.gamma11 + g.gamma22;
  double dplus = std::sqrt(std::max(sum * sum - 4.0 * g.gamma12 * g.gamma12, 0.0));
  if (dplus == 0.0) return 0.0;
  return (g.gamma11 * g.gamma11 + g.gamma22 * g.gamma22 - 2.0 * g.gamma12 * g.gamma12) / dplus;
}

double intensity_from_density(const VarianceProfile& profile, double w) {
  ConditionalCovariance g = conditional_covariance(profile, w);
  HalfSums p = half_sums(profile.alphas, w);
  HalfSums q = half_sums(profile.betas, w);
  double r3 = p.a + q.a;
  return expected_abs_Y(g) / (w * std::numbers::pi * r3);
}

std::vector<double> sample_conditioned_Y(const VarianceProfile& profile, double w,
                                         int count, std::uint64_t seed) {
  if (!(w > 0.0)) throw std::invalid_argument("sample_conditioned_Y: w must be positive");
  profile.validate();
  const int n = profile.n();
  const int m = profile.m();
  // The law depends on |z| only; take z = sqrt(w) on the positive real axis.
  const double z = std::sqrt(w);
  HalfSums ph = half_sums(profile.alphas, w);
  HalfSums qh = half_sums(profile.betas, w);
  const double r3 = ph.a + qh.a;

  std::vector<double> out(static_cast<std::size_t>(count));
  for (int trial = 0; trial < count; ++trial) {
    SplitMix64 rng = trial_stream(seed, static_cast<std::uint64_t>(trial));
    cplx h{0.0}, zp{0.0}, zq{0.0};
    double zj = 1.0;  // z^j, real
    for (int j = 0; j <= n; ++j) {
      cplx a = std::sqrt(profile.alphas[static_cast<std::size_t>(j)]) * rng.complex_gaussian();
      h += a * zj;
      zp += static_cast<double>(j) * a * zj;
      zj *= z;
    }
    zj = 1.0;
    for (int j = 0; j <= m; ++j) {
      cplx b = std::sqrt(profile.betas[static_cast<std::size_t>(j)]) * rng.complex_gaussian();
      h += b * zj;  // Q(conj z) at real z
      zq += static_cast<double>(j) * b * zj;
      zj *= z;
    }
    cplx zp_c = zp - ph.b * h / r3;
    cplx zq_c = zq - qh.b * h / r3;
    out[static_cast<std::size_t>(trial)] = std::norm(zp_c) - std::norm(zq_c);
  }
  return out;
}

double ks_distance(std::vector<double> sample, const ConditionalCovariance& g) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    double cdf = cdf_Y(g, sample[i]);
    double lo = static_cast<double>(i) / n;
    double hi = static_cast<double>(i + 1) / n;
    worst = std::max({worst, std::abs(cdf - lo), std::abs(cdf - hi)});
  }
  return worst;
}

}  // namespace krh
