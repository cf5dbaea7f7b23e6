// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "misr/validate.hpp"
#include <string>

#include <json.hpp>

#include "misr/analytic.hpp"
#include "misr/distribution.hpp"
#include "misr/errors.hpp"
#include "misr/io.hpp"
#include "misr/rng.hpp"
#include "misr/simkernel.hpp"

namespace io = misr::io;
namespace sim = misr::simkernel;
namespace dist = misr::distribution;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("misr-test-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

}  // namespace

TEST_CASE("sig9 formatting") {
  CHECK(io::format_sig9(1.0) == "1");
  CHECK(io::format_sig9(0.5600991535115574) == "0.560099154");
  CHECK(io::round_sig9(0.5600991535115574) == doctest::Approx(0.560099154));
}

TEST_CASE("config parsing fills both sections") {
  const char* text =
      "# experiment\n"
      "[scenario]\n"
      "deployment = square\n"
      "alpha = 3.5\n"
      "scheme = silence:2\n"
      "fading = nakagami:2.5\n"
      "window_points = 4000\n"
      "realizations = 12345\n"
      "seed = 99\n"
      "interferer_fading = true\n"
      "\n"
      "[reference]\n"
      "deployment = hip\n"
      "tiers = 0.9:1, 0.1:100\n"
      "alpha = 4\n"
      "scheme = baseline\n"
      "fading = rayleigh\n";
  const io::ConfigFile cfg = io::parse_config_text(text, "test.cfg");
  CHECK(cfg.scenario.deployment.kind == sim::DeploymentKind::square_lattice);
  CHECK(cfg.scenario.alpha == 3.5);
  CHECK(cfg.scenario.scheme.kind == sim::SchemeKind::silence);
  CHECK(cfg.scenario.scheme.n == 2);
  CHECK(cfg.scenario.fading.kind == misr::fading::Kind::nakagami);
  CHECK(cfg.scenario.fading.m == 2.5);
  CHECK(cfg.scenario.window_points == 4000);
  CHECK(cfg.scenario.realizations == 12345);
  CHECK(cfg.scenario.master_seed == 99);
  CHECK(cfg.scenario.interferer_fading);

  REQUIRE(cfg.reference.has_value());
  CHECK(cfg.reference->deployment.kind == sim::DeploymentKind::hip);
  REQUIRE(cfg.reference->deployment.tiers.size() == 2);
  CHECK(cfg.reference->deployment.tiers[1].power == 100.0);
}

TEST_CASE("config errors carry file and line") {
  auto expect_error = [](const char* text, const char* fragment) {
    try {
      io::parse_config_text(text, "bad.cfg");
      FAIL_CHECK("expected config_error for: " << text);
    } catch (const misr::config_error& e) {
      const std::string msg = e.what();
      CHECK(msg.find("bad.cfg") != std::string::npos);
      CHECK(msg.find(fragment) != std::string::npos);
    }
  };
  expect_error("[scenario]\nalpa = 4\n", "unknown key");
  expect_error("[scenana]\n", "unknown section");
  expect_error("[scenario]\nalpha = 4\nalpha = 5\n", "duplicate key");
  expect_error("[scenario]\nalpha = four\n", "expected a number");
  expect_error("alpha = 4\n", "outside a section");
  expect_error("[scenario]\nalpha 4\n", "expected key = value");
  expect_error("[scenario]\ntiers = 0.9:1\n", "not hip");
  expect_error("[scenario]\ndeployment = hip\n", "needs a tiers key");
  expect_error("[scenario]\nscheme = silence\n", "needs a count");
}

TEST_CASE("ccdf csv round-trips exactly") {
  misr::rng::SplitMix64 g(4242);
  std::vector<double> samples(10000);
  for (double& v : samples) v = g.exponential() + 1e-3;
  const auto grid = dist::ThetaGrid::from_db_range(-30.0, 30.0, 0.5);
  const auto ccdf = dist::empirical_ccdf(samples, grid);

  const std::string text = io::ccdf_csv_string(ccdf);
  std::istringstream in(text);
  const auto back = io::read_ccdf_csv(in);

  CHECK(back.n_samples == ccdf.n_samples);
  REQUIRE(back.probs.size() == ccdf.probs.size());
  for (std::size_t i = 0; i < ccdf.probs.size(); ++i) {
    CHECK(back.theta_db[i] == ccdf.theta_db[i]);
    CHECK(back.theta_lin[i] == ccdf.theta_lin[i]);
    CHECK(back.probs[i] == ccdf.probs[i]);
    CHECK(back.exceed[i] == ccdf.exceed[i]);
  }
  // Re-emission is byte-identical.
  CHECK(io::ccdf_csv_string(back) == text);
}

TEST_CASE("csv reader rejects malformed input") {
  std::istringstream no_header("1,2,3,4\n");
  CHECK_THROWS_AS(io::read_ccdf_csv(no_header), misr::config_error);
  std::istringstream no_n(
      "theta_db,theta_linear,ccdf,stderr\n-30,0.001,1,0\n");
  CHECK_THROWS_AS(io::read_ccdf_csv(no_n), misr::config_error);
  std::istringstream short_row(
      "# n_samples=10\ntheta_db,theta_linear,ccdf,stderr\n-30,0.001\n");
  CHECK_THROWS_AS(io::read_ccdf_csv(short_row), misr::config_error);
}

TEST_CASE("misr json summary is valid json with 9-digit numbers") {
  sim::Scenario s;
  s.realizations = 1000;
  s.master_seed = 3;
  sim::MisrEstimate e;
  e.mean = 1.0033333333333333;
  e.stderr_ = 0.0123456789123;
  e.n = 1000;
  e.tail_share = 0.25;
  const std::string text = io::misr_estimate_json(s, e, 1.0);
  const auto j = nlohmann::json::parse(text);
  CHECK(j["mean"].get<double>() == doctest::Approx(1.00333333));
  CHECK(j["n"].get<long>() == 1000);
  CHECK(j["heavy_tail"].get<bool>() == false);
  CHECK(j["fingerprint"].get<std::uint64_t>() == s.fingerprint());
}

TEST_CASE("validation report names failing checks with observed vs expected") {
  misr::validate::CriterionResult good{"C1", "identities", true, 0.1, {"ok   x"}};
  misr::validate::CriterionResult bad{
      "C6",
      "square-gain",
      false,
      2.0,
      {"FAIL square alpha=4 gain [dB]: observed=9.9 expected=3 tol=0.3"}};
  std::ostringstream os;
  const int failures = misr::validate::print_report({good, bad}, os);
  CHECK(failures == 1);
  const std::string text = os.str();
  CHECK(text.find("[PASS] C1") != std::string::npos);
  CHECK(text.find("[FAIL] C6") != std::string::npos);
  CHECK(text.find("observed=9.9") != std::string::npos);
  CHECK(text.find("expected=3") != std::string::npos);

  const auto j = nlohmann::json::parse(misr::validate::report_json({good, bad}));
  CHECK(j.size() == 2);
  CHECK(j[1]["pass"].get<bool>() == false);
  CHECK(j[1]["id"].get<std::string>() == "C6");
}

#ifdef MISRTOOL_PATH
TEST_CASE("cli subcommands produce the documented artifacts") {
  const std::string tool = MISRTOOL_PATH;
  TempDir tmp;
  auto run = [&](const std::string& args) {
    const std::string cmd = "\"" + tool + "\" " + args + " > " +
                            (tmp.path / "stdout.txt").string() + " 2> " +
                            (tmp.path / "stderr.txt").string();
    return std::system(cmd.c_str());
  };

  SUBCASE("analytic ccdf matches the closed form") {
    const fs::path out = tmp.path / "hip4.csv";
    REQUIRE(run("ccdf --analytic hip4 --out " + out.string()) == 0);
    const auto ccdf = io::load_ccdf_csv(out.string());
    CHECK(ccdf.n_samples == 0);
    REQUIRE(ccdf.probs.size() == 121);
    for (std::size_t i = 0; i < ccdf.probs.size(); i += 17) {
      const double expected =
          misr::analytic::ccdf_hip_alpha4(ccdf.theta_lin[i]);
      CHECK(ccdf.probs[i] == doctest::Approx(expected).epsilon(1e-8));
    }
  }

  SUBCASE("misr subcommand writes a summary near 1") {
    const fs::path out = tmp.path / "misr.json";
    REQUIRE(run("misr --deployment ppp --alpha 4 --realizations 4000 "
                "--window-points 500 --seed 7 --out " +
                out.string()) == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j["mean"].get<double>() == doctest::Approx(1.0).epsilon(0.1));
    CHECK(j["n"].get<long>() == 4000);
  }

  SUBCASE("gain subcommand compares two configs") {
    const fs::path sq = tmp.path / "sq.cfg";
    const fs::path ppp = tmp.path / "ppp.cfg";
    {
      std::ofstream o(sq);
      o << "[scenario]\ndeployment = square\nalpha = 4\nfading = rayleigh\n"
           "realizations = 20000\nwindow_points = 1000\nseed = 11\n";
    }
    {
      std::ofstream o(ppp);
      o << "[scenario]\ndeployment = ppp\nalpha = 4\nfading = rayleigh\n"
           "realizations = 20000\nwindow_points = 1000\nseed = 12\n";
    }
    const fs::path out = tmp.path / "gain.json";
    REQUIRE(run("gain --scenario " + sq.string() + " --reference " +
                ppp.string() + " --p 0.9 --out " + out.string()) == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j["gain_db"].get<double>() == doctest::Approx(3.0).epsilon(0.2));
    const double gap = j["horizontal_gap_db"]["0.9"].get<double>();
    CHECK(gap > 1.5);
    CHECK(gap < 4.5);
  }

  SUBCASE("gain accepts a [reference] section and analytic references") {
    const fs::path cfg = tmp.path / "pair.cfg";
    {
      std::ofstream o(cfg);
      o << "[scenario]\ndeployment = ppp\nalpha = 4\nfading = rayleigh\n"
           "scheme = silence:1\nrealizations = 5000\nwindow_points = 500\n"
           "seed = 21\n"
           "[reference]\ndeployment = ppp\nalpha = 4\nfading = rayleigh\n"
           "realizations = 5000\nwindow_points = 500\nseed = 22\n";
    }
    const fs::path out = tmp.path / "gain2.json";
    REQUIRE(run("gain --config " + cfg.string() + " --p 0.8 --out " +
                out.string()) == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j["gain_db"].get<double>() == doctest::Approx(1.76).epsilon(0.25));

    REQUIRE(run("gain --config " + cfg.string() +
                " --reference analytic:hip4 --p 0.8") == 0);
  }

  SUBCASE("diversity subcommand fits the rayleigh slope") {
    const fs::path out = tmp.path / "div.json";
    REQUIRE(run("diversity --deployment ppp --alpha 4 --fading rayleigh "
                "--realizations 30000 --window-points 500 --seed 5 --out " +
                out.string()) == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j["slope"].get<double>() == doctest::Approx(1.0).epsilon(0.15));
  }

  SUBCASE("bad inputs exit nonzero") {
    CHECK(run("misr --alpha 2") != 0);       // divergent exponent
    CHECK(run("ccdf --analytic nosuch") != 0);
    CHECK(run("gain --scenario /nonexistent.cfg --reference analytic:hip4") !=
          0);
  }
}
#endif
