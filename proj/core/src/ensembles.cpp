#include "krh/ensembles.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "krh/errors.hpp"
#include "krh/parallel.hpp"

namespace krh {

namespace {

std::vector<double> binomial_row(int n) {
  std::vector<double> row(static_cast<std::size_t>(n) + 1);
  row[0] = 1.0;
  for (int j = 1; j <= n; ++j)
    row[static_cast<std::size_t>(j)] =
        row[static_cast<std::size_t>(j - 1)] * static_cast<double>(n - j + 1) / static_cast<double>(j);
  return row;
}

std::vector<double> inverse_factorials(int n) {
  std::vector<double> row(static_cast<std::size_t>(n) + 1);
  row[0] = 1.0;
  for (int j = 1; j <= n; ++j) row[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j - 1)] / static_cast<double>(j);
  return row;
}

ComplexPolynomial gaussian_poly(std::span<const double> variances, SplitMix64& rng) {
  std::vector<cplx> coeffs(variances.size());
  for (std::size_t j = 0; j < variances.size(); ++j)
    coeffs[j] = std::sqrt(variances[j]) * rng.complex_gaussian();
  return ComplexPolynomial(std::move(coeffs));
}

ComplexPolynomial sign_poly(int degree, SplitMix64& rng) {
  std::vector<cplx> coeffs(static_cast<std::size_t>(degree) + 1);
  for (auto& c : coeffs) c = rng.coin() ? 1.0 : -1.0;
  return ComplexPolynomial(std::move(coeffs));
}

ComplexPolynomial unit_modulus_poly(int degree, SplitMix64& rng) {
  std::vector<cplx> coeffs(static_cast<std::size_t>(degree) + 1);
  for (auto& c : coeffs) c = std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi));
  return ComplexPolynomial(std::move(coeffs));
}

}  // namespace

const char* to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::kac_iid: return "kac";
    case EnsembleKind::kostlan: return "kostlan";
    case EnsembleKind::weyl: return "weyl";
    case EnsembleKind::truncated: return "truncated";
    case EnsembleKind::iid_rademacher: return "rademacher";
    case EnsembleKind::iid_uniform_modulus: return "uniform-modulus";
    case EnsembleKind::unimodular_construction: return "unimodular";
    case EnsembleKind::littlewood: return "littlewood";
  }
  return "?";
}

EnsembleKind ensemble_kind_from_string(const std::string& name) {
  if (name == "kac" || name == "kac_iid") return EnsembleKind::kac_iid;
  if (name == "kostlan") return EnsembleKind::kostlan;
  if (name == "weyl") return EnsembleKind::weyl;
  if (name == "truncated") return EnsembleKind::truncated;
  if (name == "rademacher" || name == "iid_rademacher") return EnsembleKind::iid_rademacher;
  if (name == "uniform-modulus" || name == "iid_uniform_modulus")
    return EnsembleKind::iid_uniform_modulus;
  if (name == "unimodular" || name == "unimodular_construction")
    return EnsembleKind::unimodular_construction;
  if (name == "littlewood") return EnsembleKind::littlewood;
  throw std::invalid_argument("unknown ensemble kind: " + name);
}

bool is_gaussian(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::kac_iid:
    case EnsembleKind::kostlan:
    case EnsembleKind::weyl:
    case EnsembleKind::truncated:
      return true;
    default:
      return false;
  }
}

void EnsembleSpec::validate() const {
  if (n < 1) throw std::invalid_argument("EnsembleSpec: n >= 1 required");
  if (m < 0 || m > n) throw std::invalid_argument("EnsembleSpec: 0 <= m <= n required");
  if (kind == EnsembleKind::unimodular_construction && m != n - 1)
    throw std::invalid_argument("EnsembleSpec: unimodular construction forces m = n - 1");
}

VarianceProfile variance_profile(const EnsembleSpec& spec) {
  spec.validate();
  if (!is_gaussian(spec.kind))
    throw NotGaussian("variance_profile: no Gaussian variances for this kind");
  VarianceProfile p;
  switch (spec.kind) {
    case EnsembleKind::kac_iid:
      p = VarianceProfile::ones(spec.n, spec.m);
      break;
    case EnsembleKind::kostlan:
      p.alphas = binomial_row(spec.n);
      p.betas = binomial_row(spec.m);
      break;
    case EnsembleKind::truncated: {
      p.alphas = binomial_row(spec.n);
      auto full = binomial_row(spec.n);
      p.betas.assign(full.begin(), full.begin() + spec.m + 1);
      break;
    }
    case EnsembleKind::weyl: {
      p.alphas = inverse_factorials(spec.n);
      p.betas = inverse_factorials(spec.m);
      break;
    }
    default:
      break;
  }
  p.validate();
  return p;
}

HarmonicPolynomial sample(const EnsembleSpec& spec, SplitMix64& rng) {
  spec.validate();
  switch (spec.kind) {
    case EnsembleKind::kac_iid:
    case EnsembleKind::kostlan:
    case EnsembleKind::weyl:
    case EnsembleKind::truncated: {
      VarianceProfile prof = variance_profile(spec);
      HarmonicPolynomial h;
      h.p = gaussian_poly(prof.alphas, rng);
      h.q = gaussian_poly(prof.betas, rng);
      return h;
    }
    case EnsembleKind::iid_rademacher:
    case EnsembleKind::littlewood:
      return {sign_poly(spec.n, rng), sign_poly(spec.m, rng)};
    case EnsembleKind::iid_uniform_modulus:
      return {unit_modulus_poly(spec.n, rng), unit_modulus_poly(spec.m, rng)};
    case EnsembleKind::unimodular_construction: {
      ComplexPolynomial q = unit_modulus_poly(spec.n - 1, rng);
      ComplexPolynomial p = q;
      p.coeffs.push_back(rng.coin() ? 1.0 : -1.0);
      return {std::move(p), std::move(q)};
    }
  }
  throw std::logic_error("sample: unreachable");
}

EmpiricalEstimate empirical_expected_zeros(const EnsembleSpec& spec, double a, double b,
                                           int trials, std::uint64_t seed, int threads) {
  spec.validate();
  if (trials < 1) throw std::invalid_argument("empirical_expected_zeros: trials >= 1");
  if (!(a >= 0.0) || !(b > a))
    throw std::invalid_argument("empirical_expected_zeros: need 0 <= a < b");

  std::vector<double> counts(static_cast<std::size_t>(trials), 0.0);
  std::vector<char> failed(static_cast<std::size_t>(trials), 0);
  parallel_for(trials, threads, [&](int t) {
    SplitMix64 rng = trial_stream(seed, static_cast<std::uint64_t>(t));
    try {
      HarmonicPolynomial h = sample(spec, rng);
      ZeroSet zs = find_zeros(h);
      if (!zs.validated) {
        failed[static_cast<std::size_t>(t)] = 1;
        return;
      }
      int inside = 0;
      for (const auto& rec : zs.records) {
        double w = std::norm(rec.location);
        if (w > a && w < b) ++inside;
      }
      counts[static_cast<std::size_t>(t)] = static_cast<double>(inside);
    } catch (const std::exception&) {
      failed[static_cast<std::size_t>(t)] = 1;
    }
  });

  // Welford over validated trials, in trial order: the reduction is
  // deterministic regardless of how the parallel loop was scheduled.
  double mean = 0.0, m2 = 0.0;
  int kept = 0, failures = 0;
  for (int t = 0; t < trials; ++t) {
    if (failed[static_cast<std::size_t>(t)]) {
      ++failures;
      continue;
    }
    ++kept;
    double x = counts[static_cast<std::size_t>(t)];
    double d = x - mean;
    mean += d / kept;
    m2 += d * (x - mean);
  }

  EmpiricalEstimate est;
  est.trials = trials;
  est.seed = seed;
  est.failures = failures;
  if (static_cast<double>(failures) > 0.02 * trials)
    throw TooManyFailures("empirical_expected_zeros: failure rate above 2%");
  est.mean = mean;
  est.std_error = kept > 1 ? std::sqrt(m2 / (kept - 1) / kept) : 0.0;
  return est;
}

std::vector<ProbeRow> universality_probe(int n, int m, std::span<const EnsembleKind> kinds,
                                         int trials, std::uint64_t seed, int threads) {
  std::vector<ProbeRow> rows;
  rows.reserve(kinds.size());
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    EnsembleSpec spec{kinds[i], n, m};
    std::uint64_t kind_seed = seed ^ (0xA24BAED4963EE407ULL * (i + 1));
    rows.push_back({kinds[i], empirical_expected_zeros(spec, 0.0,
                                                       std::numeric_limits<double>::infinity(),
                                                       trials, kind_seed, threads)});
  }
  return rows;
}

}  // namespace krh
