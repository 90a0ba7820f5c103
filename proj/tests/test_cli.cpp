#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* env = std::getenv("KRH_CLI");
  REQUIRE_MESSAGE(env != nullptr, "KRH_CLI must point at the krh binary");
  return env;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = cli_path() + " " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("krh_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string data_section(const fs::path& file) {
  std::ifstream in(file);
  REQUIRE(in.good());
  std::string line, data;
  while (std::getline(in, line))
    if (line.empty() || line[0] != '#') data += line + "\n";
  return data;
}

std::string header_section(const fs::path& file) {
  std::ifstream in(file);
  std::string line, head;
  while (std::getline(in, line))
    if (!line.empty() && line[0] == '#') head += line + "\n";
  return head;
}

double parse_field(const std::string& out, const std::string& key) {
  auto pos = out.find(key + "=");
  REQUIRE(pos != std::string::npos);
  return std::strtod(out.c_str() + pos + key.size() + 1, nullptr);
}

}  // namespace

TEST_CASE("expect: linear case, analytic case, exit codes") {
  TempDir tmp;
  RunResult lin = run("expect --kind kac --n 1 --m 1 --out-dir " + tmp.path.string());
  CHECK(lin.exit_code == 0);
  CHECK(parse_field(lin.out, "value") == doctest::Approx(1.0).epsilon(1e-7));

  RunResult analytic = run("expect --kind kac --n 5 --m 0 --out-dir " + tmp.path.string());
  CHECK(analytic.exit_code == 0);
  CHECK(parse_field(analytic.out, "value") == doctest::Approx(5.0).epsilon(1e-7));

  std::string head = header_section(tmp.path / "expect.csv");
  CHECK(head.find("# krh ") != std::string::npos);
  CHECK(head.find("subcommand: expect") != std::string::npos);
  CHECK(head.find("seed=") != std::string::npos);

  RunResult bad = run("expect --kind nosuch --n 3 --m 0 --out-dir " + tmp.path.string());
  CHECK(bad.exit_code == 3);
  RunResult bad2 = run("expect");
  CHECK(bad2.exit_code == 3);
}

TEST_CASE("expect: kostlan ratio approaches the truncated-model constant pi/4") {
  TempDir tmp;
  RunResult r = run("expect --kind kostlan --n 50 --m 50 --out-dir " + tmp.path.string());
  CHECK(r.exit_code == 0);
  double ratio = parse_field(r.out, "value") / std::pow(50.0, 1.5);
  // c_alpha at alpha = 1 is pi/4 ~ 0.785; measured 0.7924 at n = 50
  CHECK(ratio > 0.75);
  CHECK(ratio < 0.85);
}

TEST_CASE("mc: reproducible across thread counts, JSON record written") {
  TempDir tmp;
  std::string base = "mc --kind kac --n 2 --m 2 --trials 120 --seed 7 --out-dir ";
  RunResult t1 = run(base + (tmp.path / "a").string() + " --threads 1");
  RunResult t4 = run(base + (tmp.path / "b").string() + " --threads 4");
  CHECK(t1.exit_code == 0);
  CHECK(t4.exit_code == 0);
  CHECK(parse_field(t1.out, "mean") == parse_field(t4.out, "mean"));

  std::ifstream ja(tmp.path / "a" / "mc.json"), jb(tmp.path / "b" / "mc.json");
  std::string sa((std::istreambuf_iterator<char>(ja)), std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(jb)), std::istreambuf_iterator<char>());
  auto data_of = [](const std::string& s) { return s.substr(s.find("\"data\"")); };
  CHECK(data_of(sa) == data_of(sb));
  CHECK(sa.find("\"mean\"") != std::string::npos);
}

TEST_CASE("extremal + verify-witness round trip and tamper detection") {
  TempDir tmp;
  RunResult search =
      run("extremal --n 6 --seeds 40 --seed 11 --threads 2 --out-dir " + tmp.path.string());
  CHECK(search.exit_code == 0);
  fs::path wfile = tmp.path / "witness_n6_seed11.json";
  REQUIRE(fs::exists(wfile));

  RunResult ok = run("verify-witness " + wfile.string());
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("witness OK") != std::string::npos);

  // corrupt the stored total
  std::ifstream in(wfile);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  in.close();
  auto pos = text.find("\"total_zeros\": ");
  REQUIRE(pos != std::string::npos);
  text.insert(pos + 15, "1");
  std::ofstream(wfile) << text;
  RunResult tampered = run("verify-witness " + wfile.string());
  CHECK(tampered.exit_code == 2);
}

TEST_CASE("intensity: CSV row count and well-formed SVG") {
  TempDir tmp;
  RunResult r = run("intensity --n 8 --m 8 --r-min 0.2 --r-max 1.6 --steps 37 --out-dir " +
                    tmp.path.string());
  CHECK(r.exit_code == 0);

  std::string data = data_section(tmp.path / "intensity.csv");
  int rows = 0;
  std::stringstream ss(data);
  std::string line;
  bool saw_header_row = false;
  while (std::getline(ss, line)) {
    if (line.rfind("r,", 0) == 0) {
      saw_header_row = true;
      continue;
    }
    if (!line.empty()) ++rows;
  }
  CHECK(saw_header_row);
  CHECK(rows == 37);

  std::ifstream svg(tmp.path / "intensity.svg");
  std::string s((std::istreambuf_iterator<char>(svg)), std::istreambuf_iterator<char>());
  CHECK(s.rfind("<svg", 0) == 0);
  CHECK(s.find("</svg>") != std::string::npos);
  int polylines = 0;
  for (std::size_t p = s.find("<polyline"); p != std::string::npos;
       p = s.find("<polyline", p + 1))
    ++polylines;
  CHECK(polylines == 3);
}

TEST_CASE("limits subcommand prints both constants and rejects straddling radii") {
  RunResult cu = run("limits --r-inner 1.5 --r-outer 2.0");
  CHECK(cu.exit_code == 0);
  CHECK(cu.out.find("C_U") != std::string::npos);
  auto eq = cu.out.find("= ");
  REQUIRE(eq != std::string::npos);
  CHECK(std::strtod(cu.out.c_str() + eq + 2, nullptr) ==
        doctest::Approx(0.25541281188299536).epsilon(1e-9));

  RunResult cv = run("limits --r-inner 0.0 --r-outer 0.5");
  CHECK(cv.exit_code == 0);
  CHECK(cv.out.find("C_V") != std::string::npos);

  RunResult bad = run("limits --r-inner 0.5 --r-outer 1.5");
  CHECK(bad.exit_code == 3);
}

TEST_CASE("density-check passes at the spec point") {
  RunResult r = run("density-check --n 3 --m 2 --w 0.7 --samples 20000 --seed 5");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("[FAIL]") == std::string::npos);
}

TEST_CASE("seed falls back to KRH_SEED and config file applies") {
  TempDir tmp;
  // env fallback
  std::string cmd = "KRH_SEED=99 " + cli_path() + " mc --kind kac --n 1 --m 1 --trials 40" +
                    " --out-dir " + tmp.path.string() + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  ::pclose(pipe);
  CHECK(out.find("seed=99") != std::string::npos);

  // config file; explicit flag wins
  fs::path cfg = tmp.path / "krh.cfg";
  std::ofstream(cfg) << "seed=123\nthreads=2\n";
  RunResult from_cfg =
      run("mc --kind kac --n 1 --m 1 --trials 40 --config " + cfg.string() + " --out-dir " +
          tmp.path.string());
  CHECK(from_cfg.out.find("seed=123") != std::string::npos);
  RunResult overridden =
      run("mc --kind kac --n 1 --m 1 --trials 40 --seed 5 --config " + cfg.string() +
          " --out-dir " + tmp.path.string());
  CHECK(overridden.out.find("seed=5") != std::string::npos);
}

TEST_CASE("sweep emits one row per degree with the ratio column") {
  TempDir tmp;
  RunResult r = run("sweep --kind kac --n-list 100,1000 --out-dir " + tmp.path.string());
  CHECK(r.exit_code == 0);
  std::string data = data_section(tmp.path / "sweep.csv");
  CHECK(data.find("n,total,inner,middle,outer,ratio_to_half_nlogn") != std::string::npos);
  int rows = 0;
  std::stringstream ss(data);
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty() && line[0] >= '0' && line[0] <= '9') ++rows;
  CHECK(rows == 2);
}
