#include "krh/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "krh/errors.hpp"
#include "krh/parallel.hpp"
#include "krh/rng.hpp"

namespace krh {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double eval_real(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

double eval_real_derivative(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 1;) acc = acc * x + static_cast<double>(k) * coeffs[k];
  return acc;
}

bool real_newton_confirms(std::span<const double> coeffs, double x0) {
  double x = x0;
  for (int it = 0; it < 40; ++it) {
    double f = eval_real(coeffs, x);
    double df = eval_real_derivative(coeffs, x);
    if (df == 0.0) break;
    double step = f / df;
    x -= step;
    if (std::abs(step) <= 1e-13 * (1.0 + std::abs(x))) break;
  }
  double scale = 0.0;
  double rk = 1.0;
  double ax = std::abs(x);
  for (double c : coeffs) {
    scale += std::abs(c) * rk;
    rk *= ax;
  }
  return std::abs(eval_real(coeffs, x)) <= 1e-8 * std::max(scale, 1e-300) &&
         std::abs(x - x0) <= 1e-6 * (1.0 + std::abs(x0));
}

std::vector<double> real_roots(std::span<const double> coeffs) {
  ComplexPolynomial p;
  p.coeffs.assign(coeffs.begin(), coeffs.end());
  std::vector<cplx> roots = roots_aberth(p, 400, 1e-9);

  std::vector<double> found;
  for (const cplx& r : roots) {
    double thr = 1e-8 * (1.0 + std::abs(r.real()));
    double im = std::abs(r.imag());
    if (im > thr * 0.1 && im <= thr * 10.0)
      throw BoundaryAmbiguity("count_real_roots: root inside the decision band");
    if (im > thr) continue;
    if (!real_newton_confirms(coeffs, r.real()))
      throw BoundaryAmbiguity("count_real_roots: real-Newton confirmation failed");
    found.push_back(r.real());
  }
  std::sort(found.begin(), found.end());
  std::vector<double> distinct;
  for (double x : found) {
    if (distinct.empty() || std::abs(x - distinct.back()) > 1e-7 * (1.0 + std::abs(x)))
      distinct.push_back(x);
  }
  return distinct;
}

}  // namespace

LineRestriction restrict_to_line(std::span<const double> thetas, int beta, int j, int n) {
  if (n < 1 || static_cast<int>(thetas.size()) != n)
    throw std::invalid_argument("restrict_to_line: need n >= 1 angles");
  if (j < 0 || j >= n) throw std::invalid_argument("restrict_to_line: 0 <= j < n");
  if (beta != 1 && beta != -1) throw std::invalid_argument("restrict_to_line: beta is +-1");

  LineRestriction line;
  line.j = j;
  line.theta_j = static_cast<double>(j) * std::numbers::pi / static_cast<double>(n);
  line.real_coeffs.resize(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k < n; ++k)
    line.real_coeffs[static_cast<std::size_t>(k)] =
        2.0 * std::cos(static_cast<double>(k) * line.theta_j + thetas[static_cast<std::size_t>(k)]);
  // Re(z^n) on the line is (-1)^j r^n.
  line.real_coeffs[static_cast<std::size_t>(n)] = (j % 2 == 0) ? beta : -beta;
  return line;
}

int count_real_roots(std::span<const double> coeffs) {
  if (coeffs.empty() || coeffs.back() == 0.0)
    throw std::invalid_argument("count_real_roots: leading coefficient must be nonzero");
  if (coeffs.size() == 1) return 0;
  return static_cast<int>(real_roots(coeffs).size());
}

Witness construct_candidate(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("construct_candidate: n >= 1");
  SplitMix64 rng = trial_stream(seed, 0);
  Witness w;
  w.n = n;
  w.seed = seed;
  w.thetas.resize(static_cast<std::size_t>(n));
  for (auto& th : w.thetas) th = rng.uniform(0.0, kTwoPi);
  w.beta = rng.coin() ? 1 : -1;
  if (std::abs(2.0 * std::cos(w.thetas[0])) < 1e-14)
    throw BoundaryAmbiguity("construct_candidate: constant coefficient at machine zero");
  w.per_line_counts.resize(static_cast<std::size_t>(n));
  w.total_zeros = 0;
  for (int j = 0; j < n; ++j) {
    LineRestriction line = restrict_to_line(w.thetas, w.beta, j, n);
    int c = count_real_roots(line.real_coeffs);
    w.per_line_counts[static_cast<std::size_t>(j)] = c;
    w.total_zeros += c;
  }
  return w;
}

HarmonicPolynomial unimodular_harmonic(int n, std::span<const double> thetas, int beta) {
  if (static_cast<int>(thetas.size()) != n)
    throw std::invalid_argument("unimodular_harmonic: need n angles");
  HarmonicPolynomial h;
  h.q.coeffs.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) h.q.coeffs[static_cast<std::size_t>(k)] = std::polar(1.0, thetas[static_cast<std::size_t>(k)]);
  h.p = h.q;
  h.p.coeffs.push_back(static_cast<double>(beta));
  return h;
}

Witness search_best(int n, int num_seeds, std::uint64_t base_seed, int threads) {
  if (num_seeds < 1) throw std::invalid_argument("search_best: num_seeds >= 1");
  std::vector<std::optional<Witness>> results(static_cast<std::size_t>(num_seeds));
  parallel_for(num_seeds, threads, [&](int k) {
    try {
      results[static_cast<std::size_t>(k)] = construct_candidate(n, base_seed + static_cast<std::uint64_t>(k));
    } catch (const BoundaryAmbiguity&) {
      // rejected trial
    }
  });
  std::optional<Witness> best;
  for (const auto& cand : results) {
    if (!cand) continue;
    if (!best || cand->total_zeros > best->total_zeros) best = cand;
  }
  if (!best) throw BoundaryAmbiguity("search_best: every candidate was rejected");
  return *best;
}

TrendReport kac_real_zero_trend(std::span<const int> n_values, int trials,
                                std::uint64_t seed, int threads) {
  TrendReport report;
  report.points.reserve(n_values.size());
  for (std::size_t ni = 0; ni < n_values.size(); ++ni) {
    const int n = n_values[ni];
    std::uint64_t level_seed = seed ^ (0x9E3779B97F4A7C15ULL * (ni + 1));
    std::vector<double> counts(static_cast<std::size_t>(trials), -1.0);
    parallel_for(trials, threads, [&](int t) {
      SplitMix64 rng = trial_stream(level_seed, static_cast<std::uint64_t>(t));
      std::vector<double> coeffs(static_cast<std::size_t>(n) + 1);
      for (int k = 0; k < n; ++k) coeffs[static_cast<std::size_t>(k)] = 2.0 * std::cos(rng.uniform(0.0, kTwoPi));
      coeffs[static_cast<std::size_t>(n)] = rng.coin() ? 1.0 : -1.0;
      try {
        counts[static_cast<std::size_t>(t)] = static_cast<double>(count_real_roots(coeffs));
      } catch (const BoundaryAmbiguity&) {
        // leave rejected
      }
    });
    double sum = 0.0;
    int used = 0;
    for (double c : counts)
      if (c >= 0.0) {
        sum += c;
        ++used;
      }
    report.points.push_back({n, used > 0 ? sum / used : 0.0, used});
  }

  // least squares of mean vs log n
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double cnt = static_cast<double>(report.points.size());
  for (const auto& pt : report.points) {
    double x = std::log(static_cast<double>(pt.n));
    sx += x;
    sy += pt.mean_real_roots;
    sxx += x * x;
    sxy += x * pt.mean_real_roots;
  }
  double denom = cnt * sxx - sx * sx;
  report.slope = denom != 0.0 ? (cnt * sxy - sx * sy) / denom : 0.0;
  report.intercept = (sy - report.slope * sx) / cnt;
  return report;
}

ScalingProbe scaling_probe(int n, int trials, std::uint64_t seed, int threads) {
  std::vector<double> outside_unit(static_cast<std::size_t>(trials), -1.0);
  std::vector<double> outside_half(static_cast<std::size_t>(trials), -1.0);
  parallel_for(trials, threads, [&](int t) {
    SplitMix64 rng = trial_stream(seed, static_cast<std::uint64_t>(t));
    std::vector<double> coeffs(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k < n; ++k) coeffs[static_cast<std::size_t>(k)] = 2.0 * std::cos(rng.uniform(0.0, kTwoPi));
    coeffs[static_cast<std::size_t>(n)] = rng.coin() ? 1.0 : -1.0;
    try {
      std::vector<double> roots = real_roots(coeffs);
      double unit = 0.0, half = 0.0;
      for (double r : roots) {
        if (std::abs(r) > 1.0) unit += 1.0;
        if (std::abs(r) > 0.5) half += 1.0;
      }
      outside_unit[static_cast<std::size_t>(t)] = unit;
      outside_half[static_cast<std::size_t>(t)] = half;
    } catch (const BoundaryAmbiguity&) {
      // rejected
    }
  });
  ScalingProbe probe;
  double su = 0.0, sh = 0.0;
  int used = 0;
  for (int t = 0; t < trials; ++t) {
    if (outside_unit[static_cast<std::size_t>(t)] < 0.0) continue;
    su += outside_unit[static_cast<std::size_t>(t)];
    sh += outside_half[static_cast<std::size_t>(t)];
    ++used;
  }
  probe.trials_used = used;
  if (used > 0) {
    probe.mean_outside_unit = su / used;
    probe.mean_outside_half = sh / used;
  }
  return probe;
}

}  // namespace krh
