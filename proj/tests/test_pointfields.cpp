// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "misr/errors.hpp"
#include "misr/pointfields.hpp"
#include "misr/rng.hpp"

namespace pf = misr::pointfields;
using misr::rng::SplitMix64;
using misr::rng::substream;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("region validation") {
  CHECK_THROWS_AS(pf::Region(0.0), misr::invalid_parameter);
  CHECK_THROWS_AS(pf::Region(-1.0), misr::invalid_parameter);
  CHECK(pf::Region(2.0).area() == doctest::Approx(4.0 * kPi));
}

TEST_CASE("ppp points are sorted and inside the region") {
  const pf::Region region(20.0);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto g = substream(7, seed, 0);
    const pf::PointSet ps = pf::sample_ppp(1.0, region, g);
    CHECK(ps.sorted);
    CHECK(ps.extent == region.radius);
    double prev = 0.0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const double d2 = ps.dist2(i);
      CHECK(d2 <= region.radius * region.radius);
      CHECK(d2 >= prev);
      prev = d2;
    }
  }
}

TEST_CASE("ppp count has the right mean") {
  const pf::Region region(std::sqrt(1000.0 / kPi));  // area 1000
  double sum = 0.0;
  const int seeds = 400;
  for (int s = 0; s < seeds; ++s) {
    auto g = substream(1, s, 0);
    sum += static_cast<double>(pf::sample_ppp(1.0, region, g).size());
  }
  const double mean = sum / seeds;
  // 3 sigma of the mean estimate: 3 * sqrt(1000/400) = 4.7
  CHECK(std::abs(mean - 1000.0) < 10.0);
}

TEST_CASE("ppp count variance matches its mean (Poisson)") {
  const pf::Region region(std::sqrt(4000.0 / kPi));  // area 4000
  const int seeds = 10000;
  double sum = 0.0, sumsq = 0.0;
  for (int s = 0; s < seeds; ++s) {
    auto g = substream(2, s, 0);
    std::vector<double> r2;
    pf::detail::sample_ppp_radii2(1.0, region.radius, g, r2);
    const double n = static_cast<double>(r2.size());
    sum += n;
    sumsq += n * n;
  }
  const double mean = sum / seeds;
  const double var = sumsq / seeds - mean * mean;
  CHECK(var == doctest::Approx(4000.0).epsilon(0.05));
}

TEST_CASE("vanishing area gives an empty set") {
  const pf::Region region(1e-6);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto g = substream(3, seed, 0);
    CHECK(pf::sample_ppp(1.0, region, g).size() == 0);
  }
}

TEST_CASE("ppp parameter validation") {
  const pf::Region region(5.0);
  auto g = substream(4, 0, 0);
  CHECK_THROWS_AS(pf::sample_ppp(0.0, region, g), misr::invalid_parameter);
  CHECK_THROWS_AS(pf::sample_ppp(-1.0, region, g), misr::invalid_parameter);
}

TEST_CASE("hip thinning preserves tier intensities") {
  const pf::Region region(std::sqrt(1000.0 / kPi));
  const std::vector<pf::TierSpec> tiers{{0.5, 1.0}, {0.5, 10.0}};
  double sum0 = 0.0, sum1 = 0.0;
  const int seeds = 300;
  for (int s = 0; s < seeds; ++s) {
    auto g = substream(5, s, 0);
    const pf::Deployment d = pf::sample_hip(tiers, region, g);
    REQUIRE(d.tiers.size() == 2);
    CHECK(d.tiers[0].second == 1.0);
    CHECK(d.tiers[1].second == 10.0);
    sum0 += static_cast<double>(d.tiers[0].first.size());
    sum1 += static_cast<double>(d.tiers[1].first.size());
    // Sorted within each tier.
    for (const auto& [ps, power] : d.tiers)
      for (std::size_t i = 1; i < ps.size(); ++i)
        CHECK(ps.dist2(i) >= ps.dist2(i - 1));
  }
  // Each tier mean 500; 3 sigma of the mean is ~3.9.
  CHECK(std::abs(sum0 / seeds - 500.0) < 8.0);
  CHECK(std::abs(sum1 / seeds - 500.0) < 8.0);
}

TEST_CASE("single-tier hip reduces to the plain ppp") {
  const pf::Region region(15.0);
  const std::vector<pf::TierSpec> one{{1.0, 1.0}};
  for (int s = 0; s < 4; ++s) {
    auto g1 = substream(13, s, 0);
    auto g2 = substream(13, s, 0);
    const pf::Deployment d = pf::sample_hip(one, region, g1);
    const pf::PointSet ps = pf::sample_ppp(1.0, region, g2);
    REQUIRE(d.tiers.size() == 1);
    CHECK(d.model == pf::DeploymentModel::ppp);
    const pf::PointSet& hp = d.tiers[0].first;
    REQUIRE(hp.size() == ps.size());
    // The radial draws coincide; distances agree up to trig rounding.
    for (std::size_t i = 0; i < ps.size(); ++i)
      CHECK(hp.dist2(i) == doctest::Approx(ps.dist2(i)).epsilon(1e-14));
  }
}

TEST_CASE("hip with no tiers is rejected") {
  const pf::Region region(5.0);
  auto g = substream(6, 0, 0);
  CHECK_THROWS_AS(pf::sample_hip({}, region, g), misr::invalid_parameter);
}

TEST_CASE("square lattice point count in a large disk") {
  const pf::Region region(50.0);
  for (int s = 0; s < 50; ++s) {
    auto g = substream(7, s, 0);
    const pf::Deployment d = pf::sample_lattice(pf::LatticeKind::square, 1.0,
                                                region, g);
    const std::size_t n = d.tiers[0].first.size();
    CHECK(n >= 7700);
    CHECK(n <= 8000);
  }
}

TEST_CASE("square lattice nearest point within half a cell diagonal") {
  const pf::Region region(30.0);
  for (int s = 0; s < 20; ++s) {
    auto g = substream(8, s, 0);
    const pf::Deployment d = pf::sample_lattice(pf::LatticeKind::square, 1.0,
                                                region, g);
    const pf::PointSet& ps = d.tiers[0].first;
    REQUIRE(ps.sorted);
    CHECK(std::sqrt(ps.dist2(0)) <= std::sqrt(2.0) / 2.0 + 1e-12);
  }
}

TEST_CASE("triangular lattice minimum spacing at unit intensity") {
  const pf::Region region(10.0);
  auto g = substream(9, 0, 0);
  const pf::Deployment d = pf::sample_lattice(pf::LatticeKind::triangular, 1.0,
                                              region, g);
  const pf::PointSet& ps = d.tiers[0].first;
  REQUIRE(ps.size() > 50);
  double min_d2 = 1e30;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      const double dx = ps.xs[i] - ps.xs[j];
      const double dy = ps.ys[i] - ps.ys[j];
      min_d2 = std::min(min_d2, dx * dx + dy * dy);
    }
  CHECK(std::sqrt(min_d2) ==
        doctest::Approx(1.0745699318235419).epsilon(1e-12));
  // Density check: count / area within 3% of intensity.
  CHECK(static_cast<double>(ps.size()) / region.area() ==
        doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("lattice needs a window with at least 2 points") {
  const pf::Region region(0.4);
  auto g = substream(10, 0, 0);
  CHECK_THROWS_AS(pf::sample_lattice(pf::LatticeKind::square, 1.0, region, g),
                  misr::insufficient_window);
}

TEST_CASE("equilateral triangle has one vertex at the centroid") {
  pf::PointSet ps;
  ps.extent = 3.0;
  for (double deg : {90.0, 210.0, 330.0}) {
    ps.xs.push_back(std::cos(deg * kPi / 180.0));
    ps.ys.push_back(std::sin(deg * kPi / 180.0));
  }
  const auto sites = pf::voronoi_vertices(ps, 2.0);
  REQUIRE(sites.size() == 1);
  CHECK(sites[0].x == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(sites[0].y) < 1e-12);
  CHECK(sites[0].circumradius == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sites[0].triple == std::array<std::size_t, 3>{0, 1, 2});
}

TEST_CASE("cocircular square corners dedup to the center vertex") {
  pf::PointSet ps;
  ps.extent = 2.0;
  ps.xs = {-0.5, 0.5, 0.5, -0.5};
  ps.ys = {-0.5, -0.5, 0.5, 0.5};
  const auto sites = pf::voronoi_vertices(ps, 1.5);
  REQUIRE(sites.size() == 1);
  CHECK(std::abs(sites[0].x) < 1e-12);
  CHECK(std::abs(sites[0].y) < 1e-12);
  CHECK(sites[0].circumradius == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("collinear points yield no vertices") {
  pf::PointSet ps;
  ps.extent = 5.0;
  ps.xs = {-1.0, 0.0, 1.0};
  ps.ys = {0.0, 0.0, 0.0};
  CHECK(pf::voronoi_vertices(ps, 4.0).empty());
}

TEST_CASE("voronoi precondition errors") {
  pf::PointSet ps;
  ps.extent = 5.0;
  ps.xs = {0.0, 1.0};
  ps.ys = {0.0, 0.0};
  CHECK_THROWS_AS(pf::voronoi_vertices(ps, 1.0), misr::insufficient_points);
  ps.xs.push_back(0.5);
  ps.ys.push_back(1.0);
  CHECK_THROWS_AS(pf::voronoi_vertices(ps, 5.0), misr::invalid_parameter);
  CHECK_THROWS_AS(pf::voronoi_vertices(ps, -1.0), misr::invalid_parameter);
}

TEST_CASE("poisson-voronoi vertex intensity is 2 lambda") {
  const double inner = 10.0;
  const pf::Region region(std::sqrt(2000.0 / kPi));
  double total = 0.0;
  const int seeds = 40;
  for (int s = 0; s < seeds; ++s) {
    auto g = substream(11, s, 0);
    const pf::PointSet ps = pf::sample_ppp(1.0, region, g);
    total += static_cast<double>(pf::voronoi_vertices(ps, inner).size());
  }
  const double mean = total / seeds;
  const double expected = 2.0 * kPi * inner * inner;  // 2 lambda A
  CHECK(mean == doctest::Approx(expected).epsilon(0.04));
}

TEST_CASE("every returned site re-verifies the empty-circumcircle property") {
  const pf::Region region(std::sqrt(500.0 / kPi));
  auto g = substream(12, 3, 0);
  const pf::PointSet ps = pf::sample_ppp(1.0, region, g);
  const auto sites = pf::voronoi_vertices(ps, 0.5 * region.radius);
  REQUIRE(sites.size() > 50);
  for (const auto& site : sites) {
    for (std::size_t t : site.triple) {
      const double dx = ps.xs[t] - site.x, dy = ps.ys[t] - site.y;
      CHECK(std::abs(std::sqrt(dx * dx + dy * dy) - site.circumradius) <=
            1e-9 * site.circumradius);
    }
    const double lim =
        site.circumradius * site.circumradius * (1.0 - 2e-9);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (i == site.triple[0] || i == site.triple[1] || i == site.triple[2])
        continue;
      const double dx = ps.xs[i] - site.x, dy = ps.ys[i] - site.y;
      CHECK(dx * dx + dy * dy >= lim);
    }
  }
}
