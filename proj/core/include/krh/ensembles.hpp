#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "krh/harmonic.hpp"
#include "krh/kac_rice.hpp"
#include "krh/rng.hpp"

namespace krh {

enum class EnsembleKind {
  kac_iid,
  kostlan,
  weyl,
  truncated,
  iid_rademacher,
  iid_uniform_modulus,
  unimodular_construction,
  littlewood,
};

const char* to_string(EnsembleKind kind);
EnsembleKind ensemble_kind_from_string(const std::string& name);
bool is_gaussian(EnsembleKind kind);

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::kac_iid;
  int n = 1;
  int m = 0;

  /// Throws std::invalid_argument on degree constraints
  /// (unimodular_construction forces m = n - 1).
  void validate() const;
};

/// Variance profile of the Gaussian kinds; throws NotGaussian otherwise.
/// kac_iid: all ones. kostlan: C(n,j) / C(m,j). truncated: C(n,j) for both
/// families (q truncated at m). weyl: 1/j!.
VarianceProfile variance_profile(const EnsembleSpec& spec);

/// Draws one harmonic polynomial from the ensemble.
HarmonicPolynomial sample(const EnsembleSpec& spec, SplitMix64& rng);

struct EmpiricalEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  int failures = 0;  // trials whose zero set did not validate
};

/// Monte Carlo mean zero count over the annulus a < |z|^2 < b. Trials use
/// counter-based per-trial streams, so the result is independent of the
/// thread count. Throws TooManyFailures when failures/trials > 0.02.
EmpiricalEstimate empirical_expected_zeros(const EnsembleSpec& spec, double a, double b,
                                           int trials, std::uint64_t seed, int threads = 1);

struct ProbeRow {
  EnsembleKind kind;
  EmpiricalEstimate estimate;
};

/// Side-by-side empirical means for several coefficient laws at identical
/// (n, m, trials); each kind gets its own deterministic stream family.
std::vector<ProbeRow> universality_probe(int n, int m, std::span<const EnsembleKind> kinds,
                                         int trials, std::uint64_t seed, int threads = 1);

}  // namespace krh
