#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "krh/extremal.hpp"

namespace krh {

/// 64-bit FNV-1a over the canonical serialization of the angles: each theta
/// rendered with "%.17g", joined by single commas.
std::uint64_t witness_checksum(std::span<const double> thetas);

/// JSON schema: {version, n, beta, thetas, per_line_counts, total_zeros,
/// seed, checksum}. Checksums cover thetas only; the counts are re-derivable.
void save_witness(const Witness& w, const std::filesystem::path& path);

struct StoredWitness {
  Witness witness;
  std::uint64_t checksum = 0;
};

/// Throws std::runtime_error on malformed files.
StoredWitness load_witness(const std::filesystem::path& path);

struct WitnessVerification {
  bool checksum_ok = false;
  bool counts_ok = false;  // per-line counts and total recomputed from thetas
  int recomputed_total = 0;
  bool ok() const { return checksum_ok && counts_ok; }
};

/// Recounts the zeros from the stored angles alone and compares everything.
WitnessVerification verify_witness(const StoredWitness& stored);

}  // namespace krh
