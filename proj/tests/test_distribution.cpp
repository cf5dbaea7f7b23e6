// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "misr/analytic.hpp"
#include "misr/distribution.hpp"
#include "misr/errors.hpp"

namespace dist = misr::distribution;
namespace an = misr::analytic;

namespace {

double db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace

TEST_CASE("theta grid construction") {
  const auto g = dist::ThetaGrid::from_db_range(-30.0, 30.0, 0.5);
  CHECK(g.theta_db.size() == 121);
  CHECK(g.theta_db.front() == -30.0);
  CHECK(g.theta_db.back() == 30.0);
  for (std::size_t i = 1; i < g.theta_lin.size(); ++i)
    CHECK(g.theta_lin[i] > g.theta_lin[i - 1]);
  CHECK_THROWS_AS(dist::ThetaGrid::from_db_range(0.0, -10.0, 0.5),
                  misr::invalid_parameter);
  CHECK_THROWS_AS(dist::ThetaGrid::from_db_range(0.0, 10.0, 0.0),
                  misr::invalid_parameter);
}

TEST_CASE("empirical ccdf counts strictly-greater samples") {
  const std::vector<double> samples{1.0, 2.0, 3.0};
  const auto grid =
      dist::ThetaGrid::from_db_values({db(0.5), db(1.5), db(2.5), db(4.0)});
  const auto c = dist::empirical_ccdf(samples, grid);
  CHECK(c.n_samples == 3);
  CHECK(c.probs[0] == doctest::Approx(1.0));          // below min sample
  CHECK(c.probs[1] == doctest::Approx(2.0 / 3.0));
  CHECK(c.probs[2] == doctest::Approx(1.0 / 3.0));
  CHECK(c.probs[3] == doctest::Approx(0.0));          // above max sample
  for (std::size_t i = 1; i < c.probs.size(); ++i)
    CHECK(c.probs[i] <= c.probs[i - 1]);
  CHECK(c.stderr_at(0) == doctest::Approx(0.0));
  CHECK(c.stderr_at(1) ==
        doctest::Approx(std::sqrt((2.0 / 3.0) * (1.0 / 3.0) / 3.0)));
  CHECK_THROWS_AS(dist::empirical_ccdf({}, grid), misr::invalid_parameter);
}

TEST_CASE("analytic tabulation is exact with zero stderr") {
  const auto grid = dist::ThetaGrid::from_db_range(-10.0, 10.0, 1.0);
  const auto c = dist::tabulate_ccdf(an::ccdf_hip_alpha4, grid);
  CHECK(c.n_samples == 0);
  for (std::size_t i = 0; i < grid.theta_lin.size(); ++i) {
    CHECK(c.probs[i] == an::ccdf_hip_alpha4(grid.theta_lin[i]));
    CHECK(c.stderr_at(i) == 0.0);
  }
}

TEST_CASE("analytic inversion hits the arctan form") {
  const double p = 1.0 / (1.0 + std::atan(1.0));  // ccdf_hip_alpha4(1)
  const double theta = dist::inverse_ccdf(an::ccdf_hip_alpha4, p);
  CHECK(theta == doctest::Approx(1.0).epsilon(1e-8));

  // Small-theta law: inverse at p -> (1-p)/MISR with MISR = 1.
  const double t2 = dist::inverse_ccdf(an::ccdf_hip_alpha4, 0.9999);
  CHECK(t2 == doctest::Approx(1e-4).epsilon(0.02));

  // Monotone: higher target probability, smaller threshold.
  const double a = dist::inverse_ccdf(an::ccdf_hip_alpha4, 0.6);
  const double b = dist::inverse_ccdf(an::ccdf_hip_alpha4, 0.8);
  CHECK(b < a);

  CHECK_THROWS_AS(dist::inverse_ccdf(an::ccdf_hip_alpha4, 1.0),
                  misr::domain_error);
  CHECK_THROWS_AS(dist::inverse_ccdf(an::ccdf_hip_alpha4, 0.0),
                  misr::domain_error);
}

TEST_CASE("empirical inversion interpolates in log theta") {
  // Tabulate exp(-theta) and invert: exact answer is -ln(p).
  const auto grid = dist::ThetaGrid::from_db_range(-20.0, 10.0, 0.25);
  const auto c =
      dist::tabulate_ccdf([](double t) { return std::exp(-t); }, grid);
  for (double p : {0.9, 0.5, 0.2}) {
    const double theta = dist::inverse_ccdf(c, p);
    CHECK(theta == doctest::Approx(-std::log(p)).epsilon(0.002));
  }
  // Out-of-range p names the achievable range.
  try {
    dist::inverse_ccdf(c, 0.9999999);
    FAIL("expected out_of_range_probability");
  } catch (const misr::out_of_range_probability& e) {
    CHECK(std::string(e.what()).find("achievable") != std::string::npos);
  }
}

TEST_CASE("horizontal gap identities") {
  for (double p : {0.2, 0.5, 0.9})
    CHECK(dist::horizontal_gap(an::ccdf_hip_alpha4, an::ccdf_hip_alpha4, p) ==
          doctest::Approx(0.0).epsilon(1e-6));

  // ccdf2(theta) = ccdf1(theta/2) shifts the curve by exactly 3.0103 dB.
  auto shifted = [](double t) { return an::ccdf_hip_alpha4(t / 2.0); };
  for (double p : {0.3, 0.75, 0.9, 0.95})
    CHECK(dist::horizontal_gap(an::ccdf_hip_alpha4, shifted, p) ==
          doctest::Approx(3.0102999566398120).epsilon(1e-7));
}

TEST_CASE("gap between the baseline and cooperation closed forms") {
  // Frozen from 40-digit inversion of both closed forms at p = 0.9; the
  // asymptotic (p -> 1) value is 10 log10(3/2) = 1.7609 dB.
  const double gap = dist::horizontal_gap(
      an::ccdf_hip_alpha4, an::ccdf_worstcase_coop3_alpha4, 0.9);
  CHECK(gap == doctest::Approx(1.5638341354098121).epsilon(1e-6));
  const double gap95 = dist::horizontal_gap(
      an::ccdf_hip_alpha4, an::ccdf_worstcase_coop3_alpha4, 0.95);
  CHECK(gap95 == doctest::Approx(1.6665835012688194).epsilon(1e-6));
}

TEST_CASE("diversity slope on an exact power law") {
  // probs = 1 - theta^2 on a grid where the quadratic dominates rounding.
  const auto grid = dist::ThetaGrid::from_db_range(-40.0, -30.0, 1.0);
  auto c = dist::tabulate_ccdf([](double t) { return 1.0 - t * t; }, grid);
  CHECK(dist::diversity_estimate(c) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("diversity slope of the arctan form tends to 1") {
  const auto grid = dist::ThetaGrid::from_db_range(-60.0, -40.0, 0.5);
  const auto c = dist::tabulate_ccdf(an::ccdf_hip_alpha4, grid);
  CHECK(dist::diversity_estimate(c) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("diversity needs enough outage events") {
  // 150 samples all above the grid: zero outage events everywhere.
  std::vector<double> samples(150, 100.0);
  const auto grid = dist::ThetaGrid::from_db_range(-30.0, 0.0, 1.0);
  const auto c = dist::empirical_ccdf(samples, grid);
  CHECK_THROWS_AS(dist::diversity_estimate(c), misr::insufficient_resolution);
}

TEST_CASE("gap stderr shrinks like 1/sqrt(n)") {
  const auto grid = dist::ThetaGrid::from_db_range(-20.0, 20.0, 0.5);
  auto make = [&](long n) {
    auto c = dist::tabulate_ccdf(an::ccdf_hip_alpha4, grid);
    c.n_samples = n;
    return c;
  };
  const auto small = make(10000), large = make(40000);
  const double se_small = dist::horizontal_gap_stderr(small, small, 0.9);
  const double se_large = dist::horizontal_gap_stderr(large, large, 0.9);
  CHECK(se_small > 0.0);
  CHECK(se_small / se_large == doctest::Approx(2.0).epsilon(0.01));
}
