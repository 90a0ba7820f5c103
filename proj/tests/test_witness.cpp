#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "krh/witness.hpp"

using namespace krh;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("krh_witness_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("witness round trip preserves everything") {
  TempDir tmp;
  Witness w = construct_candidate(5, 12345);
  fs::path file = tmp.path / "w.json";
  save_witness(w, file);
  StoredWitness back = load_witness(file);
  CHECK(back.witness.n == w.n);
  CHECK(back.witness.beta == w.beta);
  CHECK(back.witness.total_zeros == w.total_zeros);
  CHECK(back.witness.seed == w.seed);
  CHECK(back.witness.thetas == w.thetas);
  CHECK(back.witness.per_line_counts == w.per_line_counts);
  CHECK(back.checksum == witness_checksum(w.thetas));

  WitnessVerification v = verify_witness(back);
  CHECK(v.ok());
  CHECK(v.recomputed_total == w.total_zeros);
}

TEST_CASE("tampered witnesses are rejected") {
  TempDir tmp;
  Witness w = construct_candidate(4, 777);
  fs::path file = tmp.path / "w.json";

  Witness wrong_total = w;
  wrong_total.total_zeros += 2;
  save_witness(wrong_total, file);
  CHECK_FALSE(verify_witness(load_witness(file)).ok());

  Witness wrong_theta = w;
  wrong_theta.thetas[1] += 0.5;  // checksum follows the angles, counts do not
  save_witness(wrong_theta, file);
  StoredWitness loaded = load_witness(file);
  WitnessVerification v = verify_witness(loaded);
  CHECK(v.checksum_ok);  // checksum was recomputed on save
  CHECK_FALSE(v.counts_ok);

  // hand-edit the stored checksum
  save_witness(w, file);
  std::ifstream in(file);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  in.close();
  auto pos = text.find("\"checksum\"");
  REQUIRE(pos != std::string::npos);
  text.replace(pos + 12, 1, text[pos + 12] == '1' ? "2" : "1");
  std::ofstream(file) << text;
  CHECK_FALSE(verify_witness(load_witness(file)).ok());
}

TEST_CASE("malformed files throw") {
  TempDir tmp;
  fs::path file = tmp.path / "bad.json";
  std::ofstream(file) << "{ not json";
  CHECK_THROWS_AS(load_witness(file), std::runtime_error);
  CHECK_THROWS_AS(load_witness(tmp.path / "missing.json"), std::runtime_error);
}
