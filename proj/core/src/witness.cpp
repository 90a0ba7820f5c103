#include "krh/witness.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "krh/errors.hpp"
#include "krh/version.hpp"

namespace krh {

std::uint64_t witness_checksum(std::span<const double> thetas) {
  std::string canonical;
  char buf[40];
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    if (i > 0) canonical.push_back(',');
    std::snprintf(buf, sizeof buf, "%.17g", thetas[i]);
    canonical += buf;
  }
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

void save_witness(const Witness& w, const std::filesystem::path& path) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["n"] = w.n;
  j["beta"] = w.beta;
  j["thetas"] = w.thetas;
  j["per_line_counts"] = w.per_line_counts;
  j["total_zeros"] = w.total_zeros;
  j["seed"] = w.seed;
  j["checksum"] = witness_checksum(w.thetas);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_witness: cannot open " + path.string());
  out << j.dump(2) << '\n';
}

StoredWitness load_witness(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_witness: cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("load_witness: malformed JSON: " + std::string(e.what()));
  }
  StoredWitness stored;
  try {
    stored.witness.n = j.at("n").get<int>();
    stored.witness.beta = j.at("beta").get<int>();
    stored.witness.thetas = j.at("thetas").get<std::vector<double>>();
    stored.witness.per_line_counts = j.at("per_line_counts").get<std::vector<int>>();
    stored.witness.total_zeros = j.at("total_zeros").get<int>();
    stored.witness.seed = j.at("seed").get<std::uint64_t>();
    stored.checksum = j.at("checksum").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("load_witness: missing field: " + std::string(e.what()));
  }
  return stored;
}

WitnessVerification verify_witness(const StoredWitness& stored) {
  WitnessVerification v;
  const Witness& w = stored.witness;
  v.checksum_ok = witness_checksum(w.thetas) == stored.checksum &&
                  static_cast<int>(w.thetas.size()) == w.n && (w.beta == 1 || w.beta == -1);
  if (!v.checksum_ok) return v;

  v.counts_ok = static_cast<int>(w.per_line_counts.size()) == w.n;
  int total = 0;
  for (int j = 0; j < w.n && v.counts_ok; ++j) {
    LineRestriction line = restrict_to_line(w.thetas, w.beta, j, w.n);
    int c = 0;
    try {
      c = count_real_roots(line.real_coeffs);
    } catch (const BoundaryAmbiguity&) {
      v.counts_ok = false;
      break;
    }
    total += c;
    if (c != w.per_line_counts[static_cast<std::size_t>(j)]) v.counts_ok = false;
  }
  v.recomputed_total = total;
  if (total != w.total_zeros) v.counts_ok = false;
  return v;
}

}  // namespace krh
