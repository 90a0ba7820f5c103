// krh: experiments around expected zeros of random harmonic polynomials.
//
// Subcommands: expect, sweep, intensity, mc, extremal, verify-witness,
// density-check, limits. Exit codes: 0 success, 2 tolerance/validation
// failure, 3 bad arguments.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "krh/density.hpp"
#include "krh/ensembles.hpp"
#include "krh/errors.hpp"
#include "krh/extremal.hpp"
#include "krh/kac_rice.hpp"
#include "krh/parallel.hpp"
#include "krh/version.hpp"
#include "krh/witness.hpp"
#include "output.hpp"

namespace fs = std::filesystem;
using krh::tool::fmt17;
using krh::tool::write_header;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct GlobalOpts {
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out_dir = ".";
  double rel_tol = 1e-8;
};

std::string format_b(double b) { return std::isfinite(b) ? fmt17(b) : "inf"; }

std::ofstream open_out(const GlobalOpts& g, const std::string& name) {
  fs::create_directories(g.out_dir);
  fs::path p = fs::path(g.out_dir) / name;
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot open " + p.string());
  return os;
}

int run_expect(const GlobalOpts& g, const std::string& kind, int n, int m, double a, double b) {
  krh::EnsembleSpec spec{krh::ensemble_kind_from_string(kind), n, m};
  krh::VarianceProfile profile = krh::variance_profile(spec);
  krh::QuadratureResult q = krh::expected_zeros_annulus(profile, a, b, g.rel_tol);

  std::ostringstream params;
  params << "kind=" << kind << " n=" << n << " m=" << m << " a=" << fmt17(a)
         << " b=" << format_b(b) << " rel_tol=" << fmt17(g.rel_tol) << " seed=" << g.seed
         << " threads=" << g.threads;

  std::cout << "value=" << fmt17(q.value) << " abs_error=" << fmt17(q.abs_error_estimate)
            << " subintervals=" << q.subintervals_used << " tail_bound=" << fmt17(q.tail_bound)
            << (q.tolerance_met ? "" : " TOLERANCE_NOT_MET") << "\n";

  auto os = open_out(g, "expect.csv");
  write_header(os, "expect", params.str());
  os << "kind,n,m,a,b,value,abs_error,subintervals,tail_bound\n";
  os << kind << "," << n << "," << m << "," << fmt17(a) << "," << format_b(b) << ","
     << fmt17(q.value) << "," << fmt17(q.abs_error_estimate) << "," << q.subintervals_used
     << "," << fmt17(q.tail_bound) << "\n";
  return q.tolerance_met ? 0 : 2;
}

int run_sweep(const GlobalOpts& g, const std::string& kind, const std::vector<int>& n_list) {
  if (krh::ensemble_kind_from_string(kind) != krh::EnsembleKind::kac_iid)
    throw CLI::ValidationError("sweep", "sweep supports the i.i.d. (kac) ensemble only");

  struct Row {
    int n;
    krh::PartitionReport rep;
    bool ok;
  };
  std::vector<Row> rows(n_list.size());
  krh::parallel_for(static_cast<int>(n_list.size()), g.threads, [&](int i) {
    int n = n_list[static_cast<std::size_t>(i)];
    krh::PartitionReport rep = krh::partition_report(n, g.rel_tol);
    bool ok = rep.inner.tolerance_met && rep.middle.tolerance_met && rep.outer.tolerance_met;
    rows[static_cast<std::size_t>(i)] = {n, rep, ok};
  });

  std::ostringstream params;
  params << "kind=" << kind << " n_list=";
  for (std::size_t i = 0; i < n_list.size(); ++i) params << (i ? "," : "") << n_list[i];
  params << " rel_tol=" << fmt17(g.rel_tol) << " seed=" << g.seed << " threads=" << g.threads;

  auto os = open_out(g, "sweep.csv");
  write_header(os, "sweep", params.str());
  os << "n,total,inner,middle,outer,ratio_to_half_nlogn\n";
  bool all_ok = true;
  for (const auto& row : rows) {
    double total = row.rep.inner.value + row.rep.middle.value + row.rep.outer.value;
    double ratio = total / (0.5 * row.n * std::log(static_cast<double>(row.n)));
    os << row.n << "," << fmt17(total) << "," << fmt17(row.rep.inner.value) << ","
       << fmt17(row.rep.middle.value) << "," << fmt17(row.rep.outer.value) << ","
       << fmt17(ratio) << "\n";
    std::cout << "n=" << row.n << " total=" << fmt17(total) << " ratio=" << fmt17(ratio)
              << "\n";
    all_ok = all_ok && row.ok;
  }
  return all_ok ? 0 : 2;
}

int run_intensity(const GlobalOpts& g, int n, int m, double r_min, double r_max, int steps) {
  if (steps < 2) throw CLI::ValidationError("intensity", "steps >= 2");
  std::vector<double> radii(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i)
    radii[static_cast<std::size_t>(i)] = r_min + (r_max - r_min) * i / (steps - 1);
  auto records = krh::intensity_profile(n, m, radii);

  std::ostringstream params;
  params << "n=" << n << " m=" << m << " r_min=" << fmt17(r_min) << " r_max=" << fmt17(r_max)
         << " steps=" << steps << " seed=" << g.seed << " threads=" << g.threads;

  auto os = open_out(g, "intensity.csv");
  write_header(os, "intensity", params.str());
  os << "r,harmonic_intensity,analytic_intensity,difference\n";
  krh::tool::Series harmonic{"harmonic", {}}, analytic{"analytic", {}}, diff{"difference", {}};
  for (const auto& rec : records) {
    os << fmt17(rec.r) << "," << fmt17(rec.harmonic_intensity) << ","
       << fmt17(rec.analytic_intensity) << "," << fmt17(rec.difference) << "\n";
    harmonic.points.emplace_back(rec.r, rec.harmonic_intensity);
    analytic.points.emplace_back(rec.r, rec.analytic_intensity);
    diff.points.emplace_back(rec.r, rec.difference);
  }
  krh::tool::write_svg_chart(fs::path(g.out_dir) / "intensity.svg",
                             "first intensity vs radius (n=" + std::to_string(n) +
                                 ", m=" + std::to_string(m) + ")",
                             {harmonic, analytic, diff});
  std::cout << "wrote intensity.csv and intensity.svg (" << records.size() << " radii)\n";
  return 0;
}

int run_mc(const GlobalOpts& g, const std::string& kind, int n, int m, int trials, double a,
           double b) {
  krh::EnsembleSpec spec{krh::ensemble_kind_from_string(kind), n, m};
  krh::EmpiricalEstimate est;
  try {
    est = krh::empirical_expected_zeros(spec, a, b, trials, g.seed, g.threads);
  } catch (const krh::TooManyFailures& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  std::cout << "mean=" << fmt17(est.mean) << " std_error=" << fmt17(est.std_error)
            << " trials=" << est.trials << " failures=" << est.failures << " seed=" << est.seed
            << "\n";

  nlohmann::json j;
  j["meta"] = {{"version", krh::kVersion},
               {"subcommand", "mc"},
               {"kind", kind},
               {"n", n},
               {"m", m},
               {"trials", trials},
               {"a", a},
               {"b", std::isfinite(b) ? nlohmann::json(b) : nlohmann::json("inf")},
               {"seed", g.seed},
               {"threads", g.threads}};
  j["data"] = {{"mean", est.mean},
               {"std_error", est.std_error},
               {"trials", est.trials},
               {"failures", est.failures},
               {"seed", est.seed}};
  auto os = open_out(g, "mc.json");
  os << j.dump(2) << "\n";
  return 0;
}

int run_extremal(const GlobalOpts& g, int n, int num_seeds) {
  krh::Witness best = krh::search_best(n, num_seeds, g.seed, g.threads);
  fs::create_directories(g.out_dir);
  fs::path file = fs::path(g.out_dir) / ("witness_n" + std::to_string(n) + "_seed" +
                                         std::to_string(g.seed) + ".json");
  krh::save_witness(best, file);
  std::cout << "best witness: n=" << best.n << " total_zeros=" << best.total_zeros
            << " beta=" << best.beta << " seed=" << best.seed << " -> " << file.string()
            << "\n";
  return 0;
}

int run_verify_witness(const std::string& path) {
  krh::StoredWitness stored = krh::load_witness(path);
  krh::WitnessVerification v = krh::verify_witness(stored);
  if (v.ok()) {
    std::cout << "witness OK: n=" << stored.witness.n
              << " total_zeros=" << stored.witness.total_zeros << "\n";
    return 0;
  }
  std::cout << "witness INVALID:" << (v.checksum_ok ? "" : " checksum mismatch")
            << (v.checksum_ok && !v.counts_ok ? " recount mismatch" : "")
            << " (recomputed total " << v.recomputed_total << ", stored "
            << stored.witness.total_zeros << ")\n";
  return 2;
}

int run_density_check(const GlobalOpts& g, int n, int m, double w, int samples) {
  krh::VarianceProfile profile = krh::VarianceProfile::ones(n, m);
  krh::ConditionalCovariance gamma = krh::conditional_covariance(profile, w);
  bool all_ok = true;
  auto report = [&all_ok](const std::string& name, bool ok, const std::string& detail) {
    all_ok = all_ok && ok;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << ": " << detail << "\n";
  };

  {
    double lhs = std::numbers::pi * krh::intensity_from_density(profile, w);
    double rhs = krh::integrand_general(profile, w).value;
    double rel = std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
    report("cross-module identity", rel <= 1e-9, "relative difference " + fmt17(rel));
  }
  {
    auto pdf = [&gamma](double y) { return krh::pdf_Y(gamma, y); };
    double span = 80.0 * std::max(gamma.gamma11, gamma.gamma22);
    krh::QuadratureResult left = krh::integrate_adaptive(pdf, -span, 0.0, 1e-10);
    krh::QuadratureResult right = krh::integrate_adaptive(pdf, 0.0, span, 1e-10);
    double total = left.value + right.value;
    report("pdf normalization", std::abs(total - 1.0) <= 1e-6, "integral " + fmt17(total));
  }
  {
    auto integrand = [&gamma](double y) { return std::abs(y) * krh::pdf_Y(gamma, y); };
    double span = 80.0 * std::max(gamma.gamma11, gamma.gamma22);
    double numeric = krh::integrate_adaptive(integrand, -span, 0.0, 1e-10).value +
                     krh::integrate_adaptive(integrand, 0.0, span, 1e-10).value;
    double closed = krh::expected_abs_Y(gamma);
    report("E|Y| quadrature consistency", std::abs(numeric - closed) <= 1e-6 * closed,
           "closed " + fmt17(closed) + " numeric " + fmt17(numeric));
  }
  std::vector<double> draws = krh::sample_conditioned_Y(profile, w, samples, g.seed);
  {
    double mean_abs = 0.0, m2 = 0.0;
    int k = 0;
    for (double y : draws) {
      ++k;
      double x = std::abs(y);
      double d = x - mean_abs;
      mean_abs += d / k;
      m2 += d * (x - mean_abs);
    }
    double se = std::sqrt(m2 / (k - 1) / k);
    double closed = krh::expected_abs_Y(gamma);
    report("E|Y| Monte Carlo", std::abs(mean_abs - closed) <= 4.0 * se,
           "closed " + fmt17(closed) + " empirical " + fmt17(mean_abs) + " se " + fmt17(se));
  }
  {
    double ks = krh::ks_distance(draws, gamma);
    double bound = std::max(0.01, 2.5 / std::sqrt(static_cast<double>(samples)));
    report("Kolmogorov-Smirnov", ks <= bound, "distance " + fmt17(ks));
  }
  return all_ok ? 0 : 2;
}

int run_limits(double r_inner, double r_outer) {
  if (r_inner < r_outer && r_outer < 1.0) {
    std::cout << "C_V(" << fmt17(r_inner) << ", " << fmt17(r_outer)
              << ") = " << fmt17(krh::limit_constant_interior(r_inner, r_outer)) << "\n";
    return 0;
  }
  if (r_inner > 1.0 && r_outer > r_inner) {
    std::cout << "C_U(" << fmt17(r_inner) << ", " << fmt17(r_outer)
              << ") = " << fmt17(krh::limit_constant_exterior(r_inner, r_outer)) << "\n";
    return 0;
  }
  throw CLI::ValidationError("limits", "radii must satisfy r_inner < r_outer on one side of 1");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kac-Rice expected zeros of random harmonic polynomials"};
  app.set_version_flag("--version", std::string("krh ") + krh::kVersion);
  app.set_config("--config", "", "key=value config file; flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--seed", g.seed, "base RNG seed")->envname("KRH_SEED");
  app.add_option("--threads", g.threads, "worker pool size")->check(CLI::PositiveNumber);
  app.add_option("--out-dir", g.out_dir, "directory for output files");
  app.add_option("--rel-tol", g.rel_tol, "relative quadrature tolerance");

  std::string kind = "kac";
  int n = 1, m = 0, trials = 1000, steps = 100, num_seeds = 100, samples = 100000;
  double a = 0.0, b = kInf;
  double r_min = 0.05, r_max = 2.0, r_inner = 1.5, r_outer = 2.0, w = 1.0;
  std::vector<int> n_list;
  std::string witness_file;

  auto* expect = app.add_subcommand("expect", "quadrature of the Kac-Rice radial integral");
  expect->add_option("--kind", kind, "ensemble kind")->capture_default_str();
  expect->add_option("--n", n, "degree of p")->required();
  expect->add_option("--m", m, "degree of q")->capture_default_str();
  expect->add_option("--a", a, "annulus lower bound in w = |z|^2")->capture_default_str();
  expect->add_option("--b", b, "annulus upper bound (inf for the plane)");

  auto* sweep = app.add_subcommand("sweep", "partitioned totals across degrees");
  sweep->add_option("--kind", kind)->capture_default_str();
  sweep->add_option("--n-list", n_list, "comma-separated degrees")->required()->delimiter(',');

  auto* intensity = app.add_subcommand("intensity", "first-intensity comparison vs radius");
  intensity->add_option("--n", n)->required();
  intensity->add_option("--m", m)->required();
  intensity->add_option("--r-min", r_min)->capture_default_str();
  intensity->add_option("--r-max", r_max)->capture_default_str();
  intensity->add_option("--steps", steps)->capture_default_str();

  auto* mc = app.add_subcommand("mc", "Monte Carlo zero counting");
  mc->add_option("--kind", kind)->capture_default_str();
  mc->add_option("--n", n)->required();
  mc->add_option("--m", m)->required();
  mc->add_option("--trials", trials)->capture_default_str();
  mc->add_option("--a", a)->capture_default_str();
  mc->add_option("--b", b);

  auto* extremal = app.add_subcommand("extremal", "search unimodular witnesses");
  extremal->add_option("--n", n)->required();
  extremal->add_option("--seeds", num_seeds, "number of candidate seeds")->capture_default_str();

  auto* verify = app.add_subcommand("verify-witness", "recount a stored witness");
  verify->add_option("file", witness_file, "witness JSON file")->required();

  auto* density = app.add_subcommand("density-check", "Section-2 density oracles");
  density->add_option("--n", n)->required();
  density->add_option("--m", m)->required();
  density->add_option("--w", w, "squared modulus |z|^2")->capture_default_str();
  density->add_option("--samples", samples)->capture_default_str();

  auto* limits = app.add_subcommand("limits", "print C_U / C_V for radii");
  limits->add_option("--r-inner", r_inner)->required();
  limits->add_option("--r-outer", r_outer)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 3;
  }

  try {
    if (expect->parsed()) return run_expect(g, kind, n, m, a, b);
    if (sweep->parsed()) return run_sweep(g, kind, n_list);
    if (intensity->parsed()) return run_intensity(g, n, m, r_min, r_max, steps);
    if (mc->parsed()) return run_mc(g, kind, n, m, trials, a, b);
    if (extremal->parsed()) return run_extremal(g, n, num_seeds);
    if (verify->parsed()) return run_verify_witness(witness_file);
    if (density->parsed()) return run_density_check(g, n, m, w, samples);
    if (limits->parsed()) return run_limits(r_inner, r_outer);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 3;
}
