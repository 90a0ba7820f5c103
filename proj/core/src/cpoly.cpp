#include "krh/cpoly.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "krh/errors.hpp"

namespace krh {

namespace {

double max_magnitude(const std::vector<cplx>& c) {
  double m = 0.0;
  for (const auto& x : c) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

bool ComplexPolynomial::is_zero() const {
  for (const auto& c : coeffs)
    if (c != cplx{0.0}) return false;
  return true;
}

ComplexPolynomial canonicalized(const ComplexPolynomial& p, double rel_eps) {
  std::vector<cplx> c = p.coeffs;
  double cut = rel_eps * max_magnitude(c);
  while (!c.empty() && std::abs(c.back()) <= cut) c.pop_back();
  return ComplexPolynomial(std::move(c));
}

cplx eval(const ComplexPolynomial& p, cplx z) {
  cplx acc{0.0};
  for (std::size_t k = p.coeffs.size(); k-- > 0;) acc = acc * z + p.coeffs[k];
  return acc;
}

ComplexPolynomial derivative(const ComplexPolynomial& p) {
  if (p.coeffs.size() <= 1) return ComplexPolynomial{};
  std::vector<cplx> d(p.coeffs.size() - 1);
  for (std::size_t k = 1; k < p.coeffs.size(); ++k)
    d[k - 1] = static_cast<double>(k) * p.coeffs[k];
  return ComplexPolynomial(std::move(d));
}

ComplexPolynomial conj_coeffs(const ComplexPolynomial& p) {
  std::vector<cplx> c(p.coeffs.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = std::conj(p.coeffs[k]);
  return ComplexPolynomial(std::move(c));
}

double coefficient_scale(const ComplexPolynomial& p, double r) {
  double acc = 0.0;
  double rk = 1.0;
  for (const auto& c : p.coeffs) {
    acc += std::abs(c) * rk;
    rk *= r;
  }
  return acc;
}

namespace {

// Starting points for Aberth: one circle per edge of the upper convex hull of
// (k, log|c_k|). A single Cauchy-bound circle stalls at degrees in the
// hundreds; the hull radii track the actual root moduli.
std::vector<cplx> initial_points(const std::vector<cplx>& c, int deg) {
  constexpr double kLogZero = -1e300;
  std::vector<std::pair<int, double>> hull;
  for (int k = 0; k <= deg; ++k) {
    double mag = std::abs(c[static_cast<std::size_t>(k)]);
    double lk = mag > 0.0 ? std::log(mag) : kLogZero;
    // pop while the last hull point is on or below the chord to (k, lk)
    while (hull.size() >= 2) {
      auto [x1, y1] = hull[hull.size() - 2];
      auto [x2, y2] = hull[hull.size() - 1];
      if ((y2 - y1) * (k - x1) <= (lk - y1) * (x2 - x1))
        hull.pop_back();
      else
        break;
    }
    hull.emplace_back(k, lk);
  }
  std::vector<cplx> z;
  z.reserve(static_cast<std::size_t>(deg));
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    auto [k1, l1] = hull[e];
    auto [k2, l2] = hull[e + 1];
    int count = k2 - k1;
    double r = std::exp((l1 - l2) / count);
    r = std::clamp(r, 1e-150, 1e150);
    for (int j = 0; j < count; ++j) {
      double th = 2.0 * std::numbers::pi * j / count +
                  2.0 * std::numbers::pi * static_cast<double>(e) / hull.size() + 0.4;
      z.push_back(std::polar(r, th));
    }
  }
  return z;
}

// Newton ratio p(z)/p'(z); for |z| > 1 it is formed from the reversed
// polynomial q(u) = u^deg p(1/u) at u = 1/z: p/p' = z q / (deg q - u q').
cplx newton_ratio(const std::vector<cplx>& c, const std::vector<cplx>& dc,
                  const std::vector<cplx>& crev, const std::vector<cplx>& dcrev,
                  int deg, cplx z, double* residual_scale, double* residual) {
  constexpr double kTiny = 1e-290;
  if (std::abs(z) <= 1.0) {
    cplx p{0.0}, dp{0.0};
    double scale = 0.0;
    double az = std::abs(z);
    double rk = 1.0;
    for (std::size_t k = c.size(); k-- > 0;) p = p * z + c[k];
    for (std::size_t k = dc.size(); k-- > 0;) dp = dp * z + dc[k];
    for (const auto& ck : c) {
      scale += std::abs(ck) * rk;
      rk *= az;
    }
    if (residual_scale) *residual_scale = scale;
    if (residual) *residual = std::abs(p);
    if (std::abs(dp) < kTiny) dp = kTiny;
    return p / dp;
  }
  cplx u = 1.0 / z;
  cplx q{0.0}, dq{0.0};
  for (std::size_t k = crev.size(); k-- > 0;) q = q * u + crev[k];
  for (std::size_t k = dcrev.size(); k-- > 0;) dq = dq * u + dcrev[k];
  if (residual_scale || residual) {
    // |p(z)| = |z|^deg |q(u)|; compare against sum |c_rev,k| |u|^k on the same
    // |z|^deg footing so the ratio stays finite for large |z|.
    double au = std::abs(u);
    double scale = 0.0;
    double rk = 1.0;
    for (const auto& ck : crev) {
      scale += std::abs(ck) * rk;
      rk *= au;
    }
    if (residual_scale) *residual_scale = scale;
    if (residual) *residual = std::abs(q);
  }
  cplx den = static_cast<double>(deg) * q - u * dq;
  if (std::abs(den) < kTiny) den = kTiny;
  return z * q / den;
}

}  // namespace

std::vector<cplx> roots_aberth(const ComplexPolynomial& poly, int max_iter, double tol) {
  ComplexPolynomial pc = canonicalized(poly);
  if (pc.degree() < 1)
    throw std::invalid_argument("roots_aberth: polynomial must be nonconstant");

  std::vector<cplx> c = pc.coeffs;
  double mx = max_magnitude(c);
  for (auto& x : c) x /= mx;

  // Factor out exact roots at the origin.
  std::size_t zeros_at_origin = 0;
  while (zeros_at_origin < c.size() - 1 && c[zeros_at_origin] == cplx{0.0})
    ++zeros_at_origin;
  if (zeros_at_origin > 0) c.erase(c.begin(), c.begin() + static_cast<long>(zeros_at_origin));

  int deg = static_cast<int>(c.size()) - 1;
  std::vector<cplx> roots(zeros_at_origin, cplx{0.0});
  if (deg == 0) return roots;

  std::vector<cplx> dc(static_cast<std::size_t>(deg));
  for (int k = 1; k <= deg; ++k) dc[static_cast<std::size_t>(k - 1)] = static_cast<double>(k) * c[static_cast<std::size_t>(k)];
  std::vector<cplx> crev(c.rbegin(), c.rend());
  std::vector<cplx> dcrev(static_cast<std::size_t>(deg));
  for (int k = 1; k <= deg; ++k) dcrev[static_cast<std::size_t>(k - 1)] = static_cast<double>(k) * crev[static_cast<std::size_t>(k)];

  std::vector<cplx> z = initial_points(c, deg);
  std::vector<bool> frozen(static_cast<std::size_t>(deg), false);

  bool all_frozen = false;
  for (int it = 0; it < max_iter && !all_frozen; ++it) {
    all_frozen = true;
    for (int i = 0; i < deg; ++i) {
      if (frozen[static_cast<std::size_t>(i)]) continue;
      cplx w = newton_ratio(c, dc, crev, dcrev, deg, z[static_cast<std::size_t>(i)], nullptr, nullptr);
      cplx s{0.0};
      for (int j = 0; j < deg; ++j) {
        if (j == i) continue;
        cplx d = z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
        if (d == cplx{0.0}) d = cplx{1e-280, 0.0};
        s += 1.0 / d;
      }
      cplx den = 1.0 - w * s;
      cplx corr = std::abs(den) > 1e-290 ? w / den : w;
      if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) corr = w;
      z[static_cast<std::size_t>(i)] -= corr;
      if (std::abs(corr) <= tol * (1.0 + std::abs(z[static_cast<std::size_t>(i)])))
        frozen[static_cast<std::size_t>(i)] = true;
      else
        all_frozen = false;
    }
  }

  // Residual certificate; a couple of trailing Newton polish steps first.
  for (int i = 0; i < deg; ++i) {
    cplx& zi = z[static_cast<std::size_t>(i)];
    for (int polish = 0; polish < 2; ++polish) {
      cplx w = newton_ratio(c, dc, crev, dcrev, deg, zi, nullptr, nullptr);
      if (std::abs(w) <= 1e-17 * (1.0 + std::abs(zi))) break;
      zi -= w;
    }
    double scale = 0.0, res = 0.0;
    newton_ratio(c, dc, crev, dcrev, deg, zi, &scale, &res);
    if (!(res <= tol * std::max(scale, 1e-300)))
      throw NonConvergence("roots_aberth: residual above tolerance after iteration budget");
  }

  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

ComplexMatrix ComplexMatrix::identity(int d) {
  ComplexMatrix m(d);
  for (int i = 0; i < d; ++i) m.at(i, i) = 1.0;
  return m;
}

cplx det_lu(ComplexMatrix m) {
  const int n = m.dim;
  cplx det{1.0};
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::abs(m.at(col, col));
    for (int r = col + 1; r < n; ++r) {
      double v = std::abs(m.at(r, col));
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0.0) return cplx{0.0};
    if (pivot != col) {
      for (int k = col; k < n; ++k) std::swap(m.at(pivot, k), m.at(col, k));
      det = -det;
    }
    det *= m.at(col, col);
    for (int r = col + 1; r < n; ++r) {
      cplx factor = m.at(r, col) / m.at(col, col);
      for (int k = col + 1; k < n; ++k) m.at(r, k) -= factor * m.at(col, k);
    }
  }
  return det;
}

cplx sylvester_resultant_at(std::span<const ComplexPolynomial> f_w,
                            std::span<const ComplexPolynomial> g_w, cplx z0) {
  const int mw = static_cast<int>(f_w.size()) - 1;
  const int nw = static_cast<int>(g_w.size()) - 1;
  if (mw < 1 || nw < 1)
    throw std::invalid_argument("sylvester_resultant_at: both operands need w-degree >= 1");

  std::vector<cplx> f(static_cast<std::size_t>(mw) + 1);
  std::vector<cplx> g(static_cast<std::size_t>(nw) + 1);
  for (int k = 0; k <= mw; ++k) f[static_cast<std::size_t>(k)] = eval(f_w[static_cast<std::size_t>(k)], z0);
  for (int k = 0; k <= nw; ++k) g[static_cast<std::size_t>(k)] = eval(g_w[static_cast<std::size_t>(k)], z0);
  if (std::abs(f.back()) <= 1e-14 || std::abs(g.back()) <= 1e-14)
    throw DegenerateLeadingCoefficient(
        "sylvester_resultant_at: leading w-coefficient vanishes at the sample point");

  const int dim = mw + nw;
  ComplexMatrix s(dim);
  for (int row = 0; row < nw; ++row)
    for (int k = 0; k <= mw; ++k) s.at(row, row + k) = f[static_cast<std::size_t>(mw - k)];
  for (int row = 0; row < mw; ++row)
    for (int k = 0; k <= nw; ++k) s.at(nw + row, row + k) = g[static_cast<std::size_t>(nw - k)];
  return det_lu(std::move(s));
}

ComplexPolynomial interpolate_dft(std::span<const cplx> values, double scale) {
  const std::size_t n = values.size();
  if (n == 0) return ComplexPolynomial{};
  const double step = -2.0 * std::numbers::pi / static_cast<double>(n);
  std::vector<cplx> twiddle(n);
  for (std::size_t m = 0; m < n; ++m) twiddle[m] = std::polar(1.0, step * static_cast<double>(m));
  std::vector<cplx> coeffs(n);
  double inv_scale_k = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    cplx acc{0.0};
    for (std::size_t k = 0; k < n; ++k) acc += values[k] * twiddle[(j * k) % n];
    coeffs[j] = acc / static_cast<double>(n) * inv_scale_k;
    inv_scale_k /= scale;
  }
  return ComplexPolynomial(std::move(coeffs));
}

}  // namespace krh
