// End-to-end checks of the command-line tool. The binary path arrives in
// the OPTOMAG_CLI environment variable (set by the test registration).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string cli_path() {
  const char* p = std::getenv("OPTOMAG_CLI");
  REQUIRE_MESSAGE(p != nullptr, "OPTOMAG_CLI must point at the binary");
  return p;
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() /
             ("optomag_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args, const std::string& env_prefix = "") {
  const std::string cmd = env_prefix + "'" + cli_path() + "' " + args +
                          " 2>" + (scratch_dir() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  for (std::string line; std::getline(ss, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  for (std::string field; std::getline(ss, field, ',');) out.push_back(field);
  return out;
}

// Trace with Lorentzian dips, written in the identify input format.
void write_trace(const fs::path& path, double kittel,
                 const std::vector<double>& dips) {
  std::ofstream out(path);
  out << "freq_ghz,s11\n";
  const double lo = kittel - 1.0, hi = kittel + 0.6;
  const int npts = 3201;
  for (int i = 0; i < npts; ++i) {
    const double f = lo + (hi - lo) * i / (npts - 1);
    double s11 = 1.0;
    for (const double d : dips)
      s11 -= 0.4 * 2.5e-5 / ((f - d) * (f - d) + 2.5e-5);
    out << f << ',' << s11 << '\n';
  }
}

}  // namespace

TEST_CASE("modes: table content, ordering, determinism") {
  const auto out = scratch_dir() / "modes.csv";
  REQUIRE(run("modes --n-max 4 -o " + out.string()) == 0);
  const auto text = slurp(out);
  const auto rows = lines_of(text);
  REQUIRE(rows.size() > 10);
  CHECK(rows[0] == "n,m,r,freq_ghz,rel_ghz,oam");

  bool found_kittel = false;
  double prev_rel = -1e30;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = split_csv(rows[i]);
    REQUIRE(f.size() == 6);
    const double rel = std::stod(f[4]);
    CHECK(rel >= prev_rel);
    prev_rel = rel;
    if (f[0] == "1" && f[1] == "1" && f[2] == "0") {
      found_kittel = true;
      CHECK(std::stod(f[3]) == doctest::Approx(7.1).epsilon(1e-10));
      CHECK(std::abs(rel) < 1e-9);
      CHECK(f[5] == "0");
    }
  }
  CHECK(found_kittel);

  const auto out2 = scratch_dir() / "modes2.csv";
  REQUIRE(run("modes --n-max 4 -o " + out2.string()) == 0);
  CHECK(slurp(out2) == text);
}

TEST_CASE("modes: configuration precedence (env < config file < flags)") {
  const auto cfg = scratch_dir() / "run.json";
  {
    std::ofstream f(cfg);
    f << R"({"material": {"kittel_frequency_ghz": 7.2}})" << '\n';
  }
  const auto out = scratch_dir() / "modes_cfg.csv";

  auto kittel_of = [&](const std::string& args, const std::string& env) {
    REQUIRE(run(args + " -o " + out.string(), env) == 0);
    for (const auto& row : lines_of(slurp(out))) {
      const auto f = split_csv(row);
      if (f.size() == 6 && f[0] == "1" && f[1] == "1") return std::stod(f[3]);
    }
    FAIL("Kittel row missing");
    return 0.0;
  };

  CHECK(kittel_of("modes", "OPTOMAG_MATERIAL_KITTEL_FREQUENCY_GHZ=7.4 ") ==
        doctest::Approx(7.4));
  CHECK(kittel_of("modes --config " + cfg.string(), "") == doctest::Approx(7.2));
  CHECK(kittel_of("modes --config " + cfg.string() + " --kittel 7.25", "") ==
        doctest::Approx(7.25));
}

TEST_CASE("texture: CSV grid plus JSON sidecar") {
  const auto out = scratch_dir() / "texture.csv";
  REQUIRE(run("texture --n 3 --m -1 --r 1 --grid 21 -o " + out.string()) == 0);
  const auto rows = lines_of(slurp(out));
  REQUIRE(int(rows.size()) == 43 * 43 + 1);
  CHECK(rows[0] == "x,y,re_mplus,im_mplus,re_mminus,im_mminus");

  const auto meta = json::parse(slurp(out.string() + ".meta.json"));
  CHECK(meta["winding"].get<int>() == 2);
  CHECK(meta["pde_residual"].get<double>() < 1e-3);
  CHECK(meta["boundary_residual"].get<double>() < 1e-3);
}

TEST_CASE("channels: Kittel-mode JSON with near-resonant CW anti-Stokes") {
  const auto out = scratch_dir() / "channels.json";
  REQUIRE(run("channels --n 1 --m 1 --r 0 --orbit cw -o " + out.string()) == 0);
  const auto j = json::parse(slurp(out));
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  bool saw_anti = false;
  for (const auto& ch : j) {
    CHECK(ch["conserved"].get<bool>());
    CHECK(ch["orbit"] == "cw");
    CHECK(ch["m_tm"].get<int>() == 4835);
    if (ch["process"] == "anti_stokes") {
      saw_anti = true;
      CHECK(ch["input_spin"] == "sigma+");
      CHECK(ch["m_te"].get<int>() == 4836);
      CHECK(ch["detuning_ghz"].get<double>() == doctest::Approx(-0.9).epsilon(1e-9));
      CHECK(ch["weight"].get<double>() == doctest::Approx(0.535887).epsilon(1e-4));
    } else {
      CHECK(ch["input_spin"] == "sigma-");
    }
  }
  CHECK(saw_anti);
}

TEST_CASE("spectrum: grid size and normalization") {
  const auto out = scratch_dir() / "spectrum.csv";
  REQUIRE(run("spectrum --n 1 --m 1 --r 0 --span 0.02 --points 201 -o " +
              out.string()) == 0);
  const auto rows = lines_of(slurp(out));
  REQUIRE(int(rows.size()) == 202);
  double max_cw = 0.0, max_ccw = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = split_csv(rows[i]);
    REQUIRE(f.size() == 3);
    max_cw = std::max(max_cw, std::stod(f[1]));
    max_ccw = std::max(max_ccw, std::stod(f[2]));
  }
  CHECK(max_cw == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(max_ccw == doctest::Approx(1.0 / 126.609).epsilon(1e-3));
}

TEST_CASE("identify: labels a synthetic trace and fits the scale") {
  const auto trace = scratch_dir() / "trace.csv";
  // Dips at the (4,0,1), (1,1,0), and (3,1,1) theory positions for a
  // 7.1 GHz Kittel frequency.
  write_trace(trace, 7.1, {6.315995, 7.1, 7.322409});
  const auto out = scratch_dir() / "identify.json";
  REQUIRE(run("identify -i " + trace.string() +
              " --kittel-ghz 7.1 --n-max 4 -o " + out.string()) == 0);
  const auto j = json::parse(slurp(out));
  REQUIRE(j["traces"].size() == 1);
  const auto& dips = j["traces"][0]["dips"];
  REQUIRE(dips.size() == 3);
  CHECK(dips[0]["n"].get<int>() == 4);
  CHECK(dips[0]["m"].get<int>() == 0);
  CHECK(dips[0]["r"].get<int>() == 1);
  CHECK(dips[1]["n"].get<int>() == 1);
  CHECK(dips[1]["m"].get<int>() == 1);
  CHECK(dips[1]["r"].get<int>() == 0);
  CHECK(dips[2]["n"].get<int>() == 3);
  CHECK(dips[2]["m"].get<int>() == 1);
  CHECK(dips[2]["r"].get<int>() == 1);
  CHECK(dips[2]["residual_ghz"].get<double>() < 0.002);

  const auto out_fit = scratch_dir() / "identify_fit.json";
  REQUIRE(run("identify -i " + trace.string() +
              " --kittel-ghz 7.1 --n-max 4 --fit-ms -o " + out_fit.string()) == 0);
  const auto jf = json::parse(slurp(out_fit));
  CHECK(jf["fit"]["ms_scale"].get<double>() == doctest::Approx(1.0).epsilon(5e-3));
  CHECK(jf["fit"]["four_pi_ms_eff_g"].get<double>() ==
        doctest::Approx(1940.0).epsilon(5e-3));
}

TEST_CASE("exit codes distinguish usage, numeric, and I/O failures") {
  CHECK(run("frobnicate") == 2);                       // unknown subcommand
  CHECK(run("texture --n 1 --m 1 --r 5 --grid 21") == 2);  // no such root
  CHECK(run("modes --n-max 4 -o /nonexistent_dir/x.csv") == 4);
  CHECK(run("identify -i /no/such/file.csv --kittel-ghz 7.1") == 4);

  // Structurally valid CSV whose frequency grid is not increasing: a data
  // error past argument parsing.
  const auto bad = scratch_dir() / "bad.csv";
  {
    std::ofstream f(bad);
    f << "freq_ghz,s11\n";
    for (int i = 0; i < 20; ++i) f << 7.0 - i * 0.01 << ",0.9\n";
  }
  CHECK(run("identify -i " + bad.string() + " --kittel-ghz 7.1") == 3);
}

TEST_CASE("help exits cleanly") {
  CHECK(run("--help >/dev/null") == 0);
}
