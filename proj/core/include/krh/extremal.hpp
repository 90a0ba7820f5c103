#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "krh/harmonic.hpp"

namespace krh {

/// Restriction of beta Re(z^n) + 2 Re q(z) = 0 to the line z = r e^{i theta_j}
/// with theta_j = j pi / n and r running over all of R. Coefficient k is
/// 2 cos(k theta_j + theta_k) for k < n; the leading coefficient carries the
/// line-dependent sign of Re(z^n): beta * (-1)^j.
struct LineRestriction {
  int j = 0;
  double theta_j = 0.0;
  std::vector<double> real_coeffs;  // ascending, degree n
};

LineRestriction restrict_to_line(std::span<const double> thetas, int beta, int j, int n);

/// Distinct real roots over all of R: complex roots with |Im| below
/// 1e-8 (1 + |Re|), each confirmed by real-Newton convergence, deduplicated.
/// Throws BoundaryAmbiguity when a root lands within a factor 10 of the
/// threshold on either side, so the caller can reject the trial instead of
/// misclassifying.
int count_real_roots(std::span<const double> coeffs);

struct Witness {
  int n = 0;
  int beta = 1;
  std::vector<double> thetas;  // n angles in [0, 2 pi)
  std::vector<int> per_line_counts;
  int total_zeros = 0;
  std::uint64_t seed = 0;
};

/// One random unimodular candidate: thetas uniform, beta = +-1, zero count
/// summed over the n line restrictions. Propagates BoundaryAmbiguity (and
/// rejects |2 cos theta_0| < 1e-14, which would put a root at r = 0).
Witness construct_candidate(int n, std::uint64_t seed);

/// The harmonic polynomial realized by a witness: q = sum e^{i theta_k} z^k,
/// p = beta z^n + q.
HarmonicPolynomial unimodular_harmonic(int n, std::span<const double> thetas, int beta);

/// Best candidate over num_seeds consecutive seeds starting at base_seed;
/// ambiguous trials are skipped, ties keep the smallest seed.
Witness search_best(int n, int num_seeds, std::uint64_t base_seed, int threads = 1);

struct TrendPoint {
  int n = 0;
  double mean_real_roots = 0.0;
  int trials_used = 0;
};

struct TrendReport {
  std::vector<TrendPoint> points;
  double slope = 0.0;      // least-squares slope of mean vs log n
  double intercept = 0.0;
};

/// Mean real-root count of the line-0 restriction (coefficients 2 cos U_k,
/// leading +-1) across degrees, with the fitted slope against log n.
TrendReport kac_real_zero_trend(std::span<const int> n_values, int trials,
                                std::uint64_t seed, int threads = 1);

struct ScalingProbe {
  double mean_outside_unit = 0.0;  // real roots with |r| > 1
  double mean_outside_half = 0.0;  // real roots with |r| > 1/2
  int trials_used = 0;
};

ScalingProbe scaling_probe(int n, int trials, std::uint64_t seed, int threads = 1);

}  // namespace krh
