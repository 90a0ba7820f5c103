#include "krh/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "krh/errors.hpp"

namespace krh {

namespace {

constexpr double kPi = std::numbers::pi;

struct Prepared {
  ComplexPolynomial p, q, dp, dq;
  int n = 0, m = 0;
};

Prepared prepare(const HarmonicPolynomial& h) {
  Prepared out;
  out.p = canonicalized(h.p);
  out.q = canonicalized(h.q);
  out.n = out.p.degree();
  out.m = out.q.degree();
  if (out.n < 1) throw std::invalid_argument("harmonic solver: deg p >= 1 required");
  out.dp = derivative(out.p);
  out.dq = derivative(out.q);
  return out;
}

double scale_at(const Prepared& pr, double r) {
  return coefficient_scale(pr.p, r) + coefficient_scale(pr.q, r);
}

cplx eval_h(const Prepared& pr, cplx z) { return eval(pr.p, z) + std::conj(eval(pr.q, z)); }

// One damped Newton step on the real system (Re H, Im H). With a = dH/dz and
// b = dH/dzbar the update solves a dz + b conj(dz) = -H.
bool newton_refine(const Prepared& pr, cplx& z, int iters) {
  for (int it = 0; it < iters; ++it) {
    cplx hval = eval_h(pr, z);
    cplx a = eval(pr.dp, z);
    cplx b = std::conj(eval(pr.dq, z));
    double det = std::norm(a) - std::norm(b);
    if (std::abs(det) < 1e-300) return false;
    cplx dz = (-hval * std::conj(a) + std::conj(hval) * b) / det;
    double step = std::abs(dz);
    // damping: halve while the step fails to reduce |H|
    double h0 = std::abs(hval);
    cplx znew = z + dz;
    for (int half = 0; half < 6 && std::abs(eval_h(pr, znew)) > h0 && step > 1e-15 * (1.0 + std::abs(z)); ++half) {
      dz *= 0.5;
      step *= 0.5;
      znew = z + dz;
    }
    z = znew;
    if (step <= 1e-14 * (1.0 + std::abs(z))) {
      // one polish step so zeros land exactly (including the origin)
      cplx hv = eval_h(pr, z);
      cplx a2 = eval(pr.dp, z);
      cplx b2 = std::conj(eval(pr.dq, z));
      double det2 = std::norm(a2) - std::norm(b2);
      if (std::abs(det2) > 1e-300)
        z += (-hv * std::conj(a2) + std::conj(hv) * b2) / det2;
      return true;
    }
  }
  return false;
}

double bound_for(const Prepared& pr) {
  const int n = pr.n;
  const int m = pr.m;
  double lead = std::abs(pr.p.coeffs.back());
  if (n == m) {
    double lead_q = std::abs(pr.q.coeffs.back());
    if (std::abs(lead - lead_q) <= 1e-12 * std::max(lead, lead_q))
      throw UnboundedZeroSet("root_bound: equal-degree leading moduli coincide");
  }
  auto dominated = [&](double r) {
    double lhs = lead * std::pow(r, n);
    double rhs = 0.0;
    double rk = 1.0;
    for (int k = 0; k < n; ++k) {
      double mags = std::abs(pr.p.coeffs[static_cast<std::size_t>(k)]);
      if (k <= m) mags += std::abs(pr.q.coeffs[static_cast<std::size_t>(k)]);
      rhs += mags * rk;
      rk *= r;
    }
    if (m == n) rhs += std::abs(pr.q.coeffs.back()) * std::pow(r, n);
    return lhs > rhs;
  };
  double hi = 1.0;
  while (!dominated(hi)) {
    hi *= 2.0;
    if (hi > 1e9) throw UnboundedZeroSet("root_bound: dominance not reached below 1e9");
  }
  if (hi == 1.0) return 1.0;
  double lo = hi / 2.0;
  for (int it = 0; it < 60 && (hi - lo) > 1e-6 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (dominated(mid) ? hi : lo) = mid;
  }
  return hi;
}

int winding_on(const Prepared& pr, double radius, int samples) {
  int m = std::max(samples, 8);
  for (int attempt = 0; attempt < 4; ++attempt) {
    double total = 0.0;
    double max_step = 0.0;
    double prev = std::arg(eval_h(pr, cplx{radius, 0.0}));
    for (int k = 1; k <= m; ++k) {
      double th = 2.0 * kPi * k / m;
      double cur = std::arg(eval_h(pr, std::polar(radius, th)));
      double d = cur - prev;
      while (d > kPi) d -= 2.0 * kPi;
      while (d <= -kPi) d += 2.0 * kPi;
      max_step = std::max(max_step, std::abs(d));
      total += d;
      prev = cur;
    }
    if (max_step <= 0.5 * kPi) return static_cast<int>(std::lround(total / (2.0 * kPi)));
    m *= 2;
  }
  throw PhaseStepTooLarge("winding_number: a zero sits too close to the contour");
}

ZeroSet flipped(ZeroSet s) {
  for (auto& rec : s.records) rec.orientation = -rec.orientation;
  std::swap(s.n_plus, s.n_minus);
  s.winding = -s.winding;
  return s;
}

}  // namespace

cplx eval(const HarmonicPolynomial& h, cplx z) {
  return eval(h.p, z) + std::conj(eval(h.q, z));
}

double root_bound(const HarmonicPolynomial& h) { return bound_for(prepare(h)); }

int winding_number(const HarmonicPolynomial& h, double radius, int samples) {
  return winding_on(prepare(h), radius, samples);
}

ZeroSet find_zeros(const HarmonicPolynomial& h, const SolveOptions& opts) {
  Prepared pr = prepare(h);

  // conj(H) swaps the roles of p and q: same zeros, opposite orientations.
  if (pr.m > pr.n ||
      (pr.m == pr.n && std::abs(pr.q.coeffs.back()) > std::abs(pr.p.coeffs.back())))
    return flipped(find_zeros(HarmonicPolynomial{h.q, h.p}, opts));

  ZeroSet out;
  double bound = bound_for(pr);

  std::vector<cplx> candidates;
  if (pr.m == 0) {
    // Analytic case up to a constant: zeros of p(z) + conj(q_0).
    ComplexPolynomial shifted = pr.p;
    shifted.coeffs[0] += std::conj(pr.q.coeffs[0]);
    try {
      candidates = roots_aberth(canonicalized(shifted, 0.0), 400, 1e-9);
    } catch (const NonConvergence&) {
      return out;  // validated stays false
    }
  } else {
    // f = p(z) + q~(w), g = q(z) + p~(w); zeros of H are the w = conj(z)
    // solutions. Res_w sampled on a circle and interpolated; z-degree <= n^2.
    ComplexPolynomial pt = conj_coeffs(pr.p);
    ComplexPolynomial qt = conj_coeffs(pr.q);
    const int n = pr.n;
    const int samples = n * n + n + 1;
    // Sampling sticks near the unit-scale root cluster: blowing the circle up
    // with a huge root bound buries the low coefficients in det noise.
    const double radius = 1.2 * std::min(bound, 2.0);

    std::vector<ComplexPolynomial> f_w(static_cast<std::size_t>(pr.m) + 1);
    f_w[0] = pr.p;
    f_w[0].coeffs[0] += qt.coeffs[0];
    for (int k = 1; k <= pr.m; ++k) f_w[static_cast<std::size_t>(k)] = ComplexPolynomial{qt.coeffs[static_cast<std::size_t>(k)]};
    std::vector<ComplexPolynomial> g_w(static_cast<std::size_t>(pr.n) + 1);
    g_w[0] = pr.q;
    g_w[0].coeffs[0] += pt.coeffs[0];
    for (int k = 1; k <= pr.n; ++k) g_w[static_cast<std::size_t>(k)] = ComplexPolynomial{pt.coeffs[static_cast<std::size_t>(k)]};

    std::vector<cplx> values(static_cast<std::size_t>(samples));
    double vmax = 0.0;
    for (int k = 0; k < samples; ++k) {
      cplx z0 = std::polar(radius, 2.0 * kPi * k / samples);
      values[static_cast<std::size_t>(k)] = sylvester_resultant_at(f_w, g_w, z0);
      vmax = std::max(vmax, std::abs(values[static_cast<std::size_t>(k)]));
    }
    if (vmax == 0.0) return out;
    for (auto& v : values) v /= vmax;

    ComplexPolynomial res = interpolate_dft(values, radius);
    // Trim against the interpolation noise floor: with samples normalized to
    // max modulus 1, coefficient k carries absolute noise ~ eps / radius^k.
    int deg = res.degree();
    while (deg > 0 &&
           std::abs(res.coeffs[static_cast<std::size_t>(deg)]) <=
               1e-12 / std::pow(radius, deg))
      --deg;
    res.coeffs.resize(static_cast<std::size_t>(deg) + 1);
    if (deg < 1) return out;
    try {
      candidates = roots_aberth(res, 400, 1e-6);
    } catch (const NonConvergence&) {
      return out;
    }
  }

  // Newton-refine on H, filter by residual, dedupe, orient.
  const double dedupe = opts.dedupe_radius_rel * bound;
  for (cplx z : candidates) {
    if (!newton_refine(pr, z, opts.newton_iters)) continue;
    double res = std::abs(eval_h(pr, z));
    if (!(res <= opts.residual_tol * scale_at(pr, std::abs(z)))) continue;
    bool dup = false;
    for (const auto& rec : out.records)
      if (std::abs(z - rec.location) <= dedupe) {
        dup = true;
        break;
      }
    for (const auto& d : out.degenerate)
      if (std::abs(z - d) <= dedupe) {
        dup = true;
        break;
      }
    if (dup) continue;
    double jp = std::norm(eval(pr.dp, z));
    double jq = std::norm(eval(pr.dq, z));
    double jac = jp - jq;
    if (std::abs(jac) < 1e-10 * std::max(jp + jq, 1e-300)) {
      out.degenerate.push_back(z);
      continue;
    }
    ZeroRecord rec{z, jac > 0.0 ? 1 : -1, res};
    out.records.push_back(rec);
    (rec.orientation > 0 ? out.n_plus : out.n_minus)++;
  }

  try {
    out.winding = winding_on(pr, 1.25 * bound, std::max(64 * pr.n, 256));
  } catch (const PhaseStepTooLarge&) {
    out.validated = false;
    return out;
  }
  out.validated = (out.n_plus - out.n_minus == out.winding) &&
                  (pr.n == pr.m || out.winding == pr.n) && out.degenerate.empty();
  return out;
}

std::vector<cplx> brute_force_zeros(const HarmonicPolynomial& h, int grid) {
  Prepared pr = prepare(h);
  double bound = bound_for(pr);
  double r = std::min(bound, 50.0);
  std::vector<double> xs(static_cast<std::size_t>(grid) + 1);
  for (int i = 0; i <= grid; ++i) xs[static_cast<std::size_t>(i)] = -r + 2.0 * r * i / grid;

  std::vector<std::vector<cplx>> hv(static_cast<std::size_t>(grid) + 1,
                                    std::vector<cplx>(static_cast<std::size_t>(grid) + 1));
  for (int i = 0; i <= grid; ++i)
    for (int j = 0; j <= grid; ++j)
      hv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          eval_h(pr, {xs[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(j)]});

  std::vector<cplx> zeros;
  auto sign_change = [](double a, double b, double c, double d) {
    double lo = std::min({a, b, c, d});
    double hi = std::max({a, b, c, d});
    return lo <= 0.0 && hi >= 0.0;
  };
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const cplx v00 = hv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const cplx v10 = hv[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(j)];
      const cplx v01 = hv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j) + 1];
      const cplx v11 = hv[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(j) + 1];
      if (!sign_change(v00.real(), v10.real(), v01.real(), v11.real())) continue;
      if (!sign_change(v00.imag(), v10.imag(), v01.imag(), v11.imag())) continue;
      cplx z{0.5 * (xs[static_cast<std::size_t>(i)] + xs[static_cast<std::size_t>(i) + 1]),
             0.5 * (xs[static_cast<std::size_t>(j)] + xs[static_cast<std::size_t>(j) + 1])};
      if (!newton_refine(pr, z, 80)) continue;
      if (!(std::abs(eval_h(pr, z)) <= 1e-7 * scale_at(pr, std::abs(z)))) continue;
      bool dup = false;
      for (const auto& y : zeros)
        if (std::abs(z - y) <= 1e-6 * r) {
          dup = true;
          break;
        }
      if (!dup) zeros.push_back(z);
    }
  }
  return zeros;
}

}  // namespace krh
