#include "krh/kac_rice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "krh/errors.hpp"

namespace krh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Kahan-compensated accumulator.
struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

struct SumTriple {
  double a, b, c;
};

// Direct sums of v_j w^j, j v_j w^j, j^2 v_j w^j.
SumTriple direct_sums(std::span<const double> vars, double w) {
  Kahan a, b, c;
  double wj = 1.0;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    double base = vars[j] * wj;
    double dj = static_cast<double>(j);
    a.add(base);
    b.add(dj * base);
    c.add(dj * dj * base);
    wj *= w;
  }
  return {a.sum, b.sum, c.sum};
}

// Scaled sums in v = 1/w: sum v_j w^(j - shift) etc., finite for w > 1.
SumTriple scaled_sums(std::span<const double> vars, double inv_w, int shift) {
  Kahan a, b, c;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    double term = vars[j] * std::pow(inv_w, static_cast<double>(shift) - static_cast<double>(j));
    double dj = static_cast<double>(j);
    a.add(term);
    b.add(dj * term);
    c.add(dj * dj * term);
  }
  return {a.sum, b.sum, c.sum};
}

SumTriple ones_direct(int n, double w) {
  Kahan a, b, c;
  double wj = 1.0;
  for (int j = 0; j <= n; ++j) {
    double dj = static_cast<double>(j);
    a.add(wj);
    b.add(dj * wj);
    c.add(dj * dj * wj);
    wj *= w;
  }
  return {a.sum, b.sum, c.sum};
}

// Geometric closed forms for w < 1, stable once |w - 1| > delta:
//   a = (1 - w^{n+1}) / (1 - w)
//   b = w (1 - w^n (n(1-w) + 1)) / (1-w)^2
//   c = w ((w+1) - w^n (n^2(1-w)^2 + (2n-1)(1-w) + 2)) / (1-w)^3
SumTriple ones_below(int n, double w) {
  double dn = static_cast<double>(n);
  double lw = std::log(w);
  double wn = std::exp(dn * lw);
  double s = 1.0 - w;
  double a = (1.0 - wn * w) / s;
  double b = w * (1.0 - wn * (dn * s + 1.0)) / (s * s);
  double c = w * ((w + 1.0) - wn * (dn * dn * s * s + (2.0 * dn - 1.0) * s + 2.0)) / (s * s * s);
  return {a, b, c};
}

// Raw closed forms for w > 1; overflow is the caller's concern.
SumTriple ones_above(int n, double w) {
  double dn = static_cast<double>(n);
  double wn = std::pow(w, dn);
  double e = w - 1.0;
  double a = (wn * w - 1.0) / e;
  double b = w * (wn * (dn * e - 1.0) + 1.0) / (e * e);
  double c = w * (wn * (dn * dn * e * e - (2.0 * dn - 1.0) * e + 2.0) - (w + 1.0)) / (e * e * e);
  return {a, b, c};
}

// Power sums S_k = sum_{j=0}^n j^k.
struct FaulhaberSums {
  double s1, s2, s3, s4;
};

FaulhaberSums faulhaber(int n) {
  double dn = static_cast<double>(n);
  double s1 = dn * (dn + 1.0) / 2.0;
  double s2 = dn * (dn + 1.0) * (2.0 * dn + 1.0) / 6.0;
  double s3 = s1 * s1;
  double s4 = dn * (dn + 1.0) * (2.0 * dn + 1.0) * (3.0 * dn * dn + 3.0 * dn - 1.0) / 30.0;
  return {s1, s2, s3, s4};
}

// Stable sums on the seam band for huge n. The naive geometric forms are
// 0/0 there; expm1/log1p rearrangements remove the cancellation except for
// |n(w-1)| <= 0.05 where a second-order Taylor expansion around w = 1 takes
// over (truncation below 1e-4 relative at the switch).
SumTriple ones_band_stable(int n, double w) {
  double eps = w - 1.0;
  double dn = static_cast<double>(n);
  double x = dn * eps;
  FaulhaberSums f = faulhaber(n);
  if (std::abs(x) <= 0.05) {
    double a = (dn + 1.0) + eps * f.s1 + 0.5 * eps * eps * (f.s2 - f.s1);
    double b = f.s1 + eps * f.s2 + 0.5 * eps * eps * (f.s3 - f.s2);
    double c = f.s2 + eps * f.s3 + 0.5 * eps * eps * (f.s4 - f.s3);
    return {a, b, c};
  }
  double lw = std::log1p(eps);
  double wn = std::exp(dn * lw);
  double a = std::expm1((dn + 1.0) * lw) / eps;
  double b = w * (dn * wn * eps - std::expm1(dn * lw)) / (eps * eps);
  double c = w * (wn * (dn * dn * eps * eps - (2.0 * dn - 1.0) * eps + 2.0) - (w + 1.0)) /
             (eps * eps * eps);
  return {a, b, c};
}

double band_half_width(int n) { return 10.0 / static_cast<double>(n); }

SumTriple ones_sums(int n, double w) {
  if (w == 0.0) return {1.0, 0.0, 0.0};
  double delta = band_half_width(n);
  if (std::abs(w - 1.0) <= delta) {
    return n <= 1000000 ? ones_direct(n, w) : ones_band_stable(n, w);
  }
  return w < 1.0 ? ones_below(n, w) : ones_above(n, w);
}

double density_from_r(double r1, double r2, double r12, double r3, double w) {
  double disc = (r1 + r2) * (r1 + r2) - 4.0 * r12 * r12;
  double rel_scale = (r1 + r2) * (r1 + r2);
  if (disc < 0.0) {
    if (rel_scale > 0.0 && disc < -1e-12 * rel_scale)
      throw IntegrandDomainError("integrand: Cauchy-Schwarz discriminant negative");
    disc = 0.0;
  }
  double num = r1 * r1 + r2 * r2 - 2.0 * r12 * r12;
  if (num < 0.0) num = 0.0;
  double denom = r3 * r3 * std::sqrt(disc);
  if (denom == 0.0) return 0.0;
  return num / (w * denom);
}

}  // namespace

bool VarianceProfile::is_iid_equal() const {
  if (alphas.size() != betas.size()) return false;
  auto all_ones = [](const std::vector<double>& v) {
    for (double x : v)
      if (x != 1.0) return false;
    return true;
  };
  return all_ones(alphas) && all_ones(betas);
}

void VarianceProfile::validate() const {
  if (alphas.empty() || betas.empty())
    throw std::invalid_argument("VarianceProfile: empty variance list");
  if (n() < m()) throw std::invalid_argument("VarianceProfile: requires n >= m");
  if (!(alphas.back() > 0.0) || !(betas.back() > 0.0))
    throw std::invalid_argument("VarianceProfile: top-degree variances must be positive");
  for (double x : alphas)
    if (!(x >= 0.0)) throw std::invalid_argument("VarianceProfile: negative variance");
  for (double x : betas)
    if (!(x >= 0.0)) throw std::invalid_argument("VarianceProfile: negative variance");
}

VarianceProfile VarianceProfile::ones(int n, int m) {
  VarianceProfile p;
  p.alphas.assign(static_cast<std::size_t>(n) + 1, 1.0);
  p.betas.assign(static_cast<std::size_t>(m) + 1, 1.0);
  return p;
}

PowerSums power_sums(std::span<const double> variances, double w) {
  if (w < 0.0) throw std::invalid_argument("power_sums: w must be nonnegative");
  SumTriple t = direct_sums(variances, w);
  if (!std::isfinite(t.a) || !std::isfinite(t.b) || !std::isfinite(t.c))
    throw PowerSumOverflow("power_sums: sum exceeds double range");
  return {t.a, t.b, t.c};
}

PowerSums power_sums_ones(int n, double w) {
  if (w < 0.0) throw std::invalid_argument("power_sums_ones: w must be nonnegative");
  if (n < 0) throw std::invalid_argument("power_sums_ones: n must be nonnegative");
  SumTriple t = ones_sums(n, w);
  if (!std::isfinite(t.a) || !std::isfinite(t.b) || !std::isfinite(t.c))
    throw PowerSumOverflow("power_sums_ones: w^(n+1) exceeds double range");
  return {t.a, t.b, t.c};
}

RadialDensity integrand_general(const VarianceProfile& profile, double w) {
  if (!(w > 0.0)) throw std::invalid_argument("integrand_general: w must be positive");
  profile.validate();
  SumTriple p{}, q{};
  if (w <= 1.0) {
    p = direct_sums(profile.alphas, w);
    q = direct_sums(profile.betas, w);
  } else {
    // Common scale w^n cancels in the density; sums stay bounded.
    int n = profile.n();
    double inv_w = 1.0 / w;
    p = scaled_sums(profile.alphas, inv_w, n);
    q = scaled_sums(profile.betas, inv_w, n);
  }
  if (!std::isfinite(p.a) || !std::isfinite(q.a) || !std::isfinite(p.c) || !std::isfinite(q.c))
    throw PowerSumOverflow("integrand_general: power sums exceed double range");
  double r3 = p.a + q.a;
  double r12 = p.b * q.b;
  double r1 = r3 * p.c - p.b * p.b;
  double r2 = r3 * q.c - q.b * q.b;
  return {w, density_from_r(r1, r2, r12, r3, w)};
}

RadialDensity integrand_iid_equal(int n, double w) {
  if (n < 1) throw std::invalid_argument("integrand_iid_equal: n >= 1 required");
  if (!(w > 0.0)) throw std::invalid_argument("integrand_iid_equal: w must be positive");

  double delta = band_half_width(n);
  double dn = static_cast<double>(n);

  if (std::abs(w - 1.0) <= delta || w < 1.0) {
    SumTriple t = ones_sums(n, w);
    double g = (t.a * t.c - t.b * t.b) / (w * t.a * t.a);
    double ratio = t.c / t.a;
    g = std::max(g, 0.0);
    ratio = std::max(ratio, 0.0);
    return {w, 0.5 / std::sqrt(w) * std::sqrt(ratio) * std::sqrt(g)};
  }

  // w > 1 + delta: log-space forms; nothing here can overflow for n <= 1e7.
  double lw = std::log(w);
  double t = std::exp(-(dn + 1.0) * lw);  // w^{-(n+1)}, underflows gracefully
  double log_a = (dn + 1.0) * lw + std::log1p(-t) - std::log(w - 1.0);
  double log_u = 2.0 * std::log(dn + 1.0) + dn * lw - 2.0 * log_a;
  double u = log_u < 0.0 ? std::exp(log_u) : 1.0;
  double g = u < 1.0 ? (1.0 - u) / ((w - 1.0) * (w - 1.0)) : 0.0;

  double num = dn * dn * w - (2.0 * dn * dn + 2.0 * dn - 1.0) + (dn + 1.0) * (dn + 1.0) / w -
               (w + 1.0) * t;
  double ratio = w * num / ((w - 1.0) * (w - 1.0) * (1.0 - t));
  ratio = std::max(ratio, 0.0);
  return {w, 0.5 / std::sqrt(w) * std::sqrt(ratio) * std::sqrt(g)};
}

std::vector<double> forced_breakpoints(int n, double a, double b) {
  double dn = static_cast<double>(n);
  double ln = std::log(dn);
  std::vector<double> candidates{1.0 - 1.0 / dn, 1.0, 1.0 + 1.0 / dn, 2.0};
  if (ln > 0.0) {
    candidates.push_back(1.0 - ln / dn);
    candidates.push_back(1.0 + ln * ln / dn);
    candidates.push_back(1.0 + 1.0 / ln);
  }
  std::vector<double> out;
  for (double x : candidates)
    if (std::isfinite(x) && x > a && x < b) out.push_back(x);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

QuadratureResult integrate_radial(const std::function<double(double)>& density, int n,
                                  double a, double b, double rel_tol) {
  if (!(a >= 0.0) || !(b > a))
    throw std::invalid_argument("expected_zeros_annulus: need 0 <= a < b");
  const double lower = std::max(a, 0.0);
  if (std::isfinite(b)) {
    auto bps = forced_breakpoints(n, lower, b);
    return integrate_adaptive(density, lower, b, rel_tol, bps);
  }
  // Fold (wstar, inf) onto u in (0, 1] with w = wstar / u^2; the density's
  // w^{-3/2} far-field decay makes the mapped integrand bounded and smooth.
  const double wstar = std::max(4.0, 2.0 * lower);
  auto bps = forced_breakpoints(n, lower, wstar);
  QuadratureResult head = integrate_adaptive(density, lower, wstar, 0.5 * rel_tol, bps);
  auto mapped = [&density, wstar](double u) {
    double w = wstar / (u * u);
    double fw = density(w);
    if (fw == 0.0) return 0.0;
    return fw * 2.0 * wstar / (u * u * u);
  };
  QuadratureResult tail = integrate_adaptive(mapped, 0.0, 1.0, 0.5 * rel_tol);
  QuadratureResult out = merge(head, tail);
  out.tolerance_met = out.abs_error_estimate <= std::max(rel_tol * std::abs(out.value), 1e-300);
  return out;
}

}  // namespace

QuadratureResult expected_zeros_annulus(const VarianceProfile& profile, double a, double b,
                                        double rel_tol) {
  profile.validate();
  if (profile.is_iid_equal()) return expected_zeros_annulus_iid(profile.n(), a, b, rel_tol);
  auto density = [&profile](double w) { return integrand_general(profile, w).value; };
  return integrate_radial(density, profile.n(), a, b, rel_tol);
}

QuadratureResult expected_zeros_annulus_iid(int n, double a, double b, double rel_tol) {
  auto density = [n](double w) { return integrand_iid_equal(n, w).value; };
  return integrate_radial(density, n, a, b, rel_tol);
}

PartitionReport partition_report(int n, double rel_tol) {
  if (n < 2) throw std::invalid_argument("partition_report: n >= 2 required");
  double dn = static_cast<double>(n);
  double ln = std::log(dn);
  double cut1 = 1.0 + ln * ln / dn;
  double cut2 = 1.0 + 1.0 / ln;
  PartitionReport rep;
  rep.inner = expected_zeros_annulus_iid(n, 0.0, cut1, rel_tol);
  rep.middle = expected_zeros_annulus_iid(n, cut1, cut2, rel_tol);
  rep.outer = expected_zeros_annulus_iid(n, cut2, kInf, rel_tol);
  return rep;
}

double analytic_kac_intensity(int n, double r) {
  double w = r * r;
  PowerSums s = power_sums_ones(n, w);
  double g = (s.a * s.c - s.b * s.b) / (w * s.a * s.a);
  return std::max(g, 0.0) / std::numbers::pi;
}

std::vector<IntensityRecord> intensity_profile(int n, int m, std::span<const double> radii) {
  VarianceProfile profile = VarianceProfile::ones(n, m);
  std::vector<IntensityRecord> out;
  out.reserve(radii.size());
  for (double r : radii) {
    if (!(r > 0.0)) throw std::invalid_argument("intensity_profile: radii must be positive");
    double w = r * r;
    double harmonic = integrand_general(profile, w).value / std::numbers::pi;
    double analytic = analytic_kac_intensity(n, r);
    out.push_back({r, harmonic, analytic, harmonic - analytic});
  }
  return out;
}

double limit_constant_interior(double r_inner, double r_outer) {
  if (!(0.0 <= r_inner) || !(r_inner <= r_outer) || !(r_outer < 1.0))
    throw std::invalid_argument("limit_constant_interior: need 0 <= R_inner <= R_outer < 1");
  if (r_inner == r_outer) return 0.0;
  auto f = [](double t) {
    double s = 1.0 - t;
    return 0.5 * std::sqrt(1.0 + t) / (s * s);
  };
  QuadratureResult q =
      integrate_adaptive(f, r_inner * r_inner, r_outer * r_outer, 1e-12);
  return q.value;
}

double limit_constant_exterior(double r_inner, double r_outer) {
  if (!(1.0 < r_inner) || !(r_inner <= r_outer))
    throw std::invalid_argument("limit_constant_exterior: need 1 < R_inner <= R_outer");
  auto anti = [](double r) { return 0.5 * std::log((r - 1.0) / (r + 1.0)); };
  return anti(r_outer) - anti(r_inner);
}

}  // namespace krh
