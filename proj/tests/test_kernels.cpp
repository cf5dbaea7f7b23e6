// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "misr/errors.hpp"
#include "misr/kernels.hpp"
#include "misr/rng.hpp"

namespace k = misr::kernels;

namespace {

std::vector<double> random_positive(std::size_t n, std::uint64_t seed) {
  misr::rng::SplitMix64 g(seed);
  std::vector<double> v(n);
  for (double& x : v) x = 0.05 + 40.0 * g.uniform01();
  return v;
}

}  // namespace

TEST_CASE("neg_half_pow plans integer alpha as mul/sqrt") {
  const auto p4 = k::neg_half_pow(4.0);
  CHECK(p4.halfint);
  CHECK(p4.whole == 2);
  CHECK_FALSE(p4.half);

  const auto p3 = k::neg_half_pow(3.0);
  CHECK(p3.halfint);
  CHECK(p3.whole == 1);
  CHECK(p3.half);

  const auto p45 = k::neg_half_pow(4.5);
  CHECK_FALSE(p45.halfint);
  CHECK(p45.exponent == doctest::Approx(2.25));

  CHECK_THROWS_AS(k::neg_half_pow(2.0), misr::invalid_parameter);
}

TEST_CASE("scalar pow_sum agrees with a direct std::pow reference") {
  const auto v = random_positive(257, 11);
  for (double alpha : {3.0, 4.0, 5.0, 6.0, 3.7}) {
    const auto p = k::neg_half_pow(alpha);
    std::vector<double> terms(v.size());
    const double sum =
        k::scalar().pow_sum(v.data(), v.size(), p, 1.7, terms.data());
    double ref_sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double ref = 1.7 * std::pow(v[i], -alpha / 2.0);
      CHECK(terms[i] == doctest::Approx(ref).epsilon(1e-13));
      ref_sum += ref;
    }
    CHECK(sum == doctest::Approx(ref_sum).epsilon(1e-12));
  }
}

TEST_CASE("scalar argmax breaks ties toward the lowest index") {
  const std::vector<double> v{1.0, 5.0, 5.0, 2.0, 5.0};
  CHECK(k::scalar().argmax(v.data(), v.size()) == 1);
}

TEST_CASE("avx2 kernels match the scalar reference") {
  const k::Kernels* simd = k::avx2();
  if (!simd) return;  // CPU without AVX2: dispatch already covered elsewhere

  for (std::size_t n : {1u, 3u, 4u, 7u, 64u, 1997u}) {
    const auto xs = random_positive(n, 100 + n);
    const auto ys = random_positive(n, 200 + n);

    std::vector<double> r2a(n), r2b(n);
    k::scalar().squared_norms(xs.data(), ys.data(), n, r2a.data());
    simd->squared_norms(xs.data(), ys.data(), n, r2b.data());
    CHECK(std::memcmp(r2a.data(), r2b.data(), n * sizeof(double)) == 0);

    k::scalar().squared_dists(xs.data(), ys.data(), n, 0.3, -1.2, r2a.data());
    simd->squared_dists(xs.data(), ys.data(), n, 0.3, -1.2, r2b.data());
    CHECK(std::memcmp(r2a.data(), r2b.data(), n * sizeof(double)) == 0);

    for (double alpha : {3.0, 4.0, 5.0, 3.7}) {
      const auto p = k::neg_half_pow(alpha);
      std::vector<double> ta(n), tb(n);
      const double sa = k::scalar().pow_sum(r2a.data(), n, p, 2.0, ta.data());
      const double sb = simd->pow_sum(r2a.data(), n, p, 2.0, tb.data());
      // Elementwise ops run in the same order per lane: bit-equal.
      CHECK(std::memcmp(ta.data(), tb.data(), n * sizeof(double)) == 0);
      // Reductions associate differently: tight relative tolerance.
      CHECK(sb == doctest::Approx(sa).epsilon(1e-12));
      // Sum-only call matches the terms call.
      CHECK(simd->pow_sum(r2a.data(), n, p, 2.0, nullptr) == sb);
    }

    CHECK(simd->argmax(r2a.data(), n) == k::scalar().argmax(r2a.data(), n));
  }

  // Tie handling across lanes.
  std::vector<double> ties(97, 1.0);
  ties[13] = 9.0;
  ties[14] = 9.0;
  ties[77] = 9.0;
  CHECK(simd->argmax(ties.data(), ties.size()) == 13);
  CHECK(k::scalar().argmax(ties.data(), ties.size()) == 13);
}

TEST_CASE("backend selection") {
  k::select("scalar");
  CHECK(std::string(k::active().name) == "scalar");
  CHECK_THROWS_AS(k::select("neon"), misr::invalid_parameter);
  k::select("auto");
  if (k::avx2())
    CHECK(std::string(k::active().name) == "avx2");
  else
    CHECK(std::string(k::active().name) == "scalar");
}
