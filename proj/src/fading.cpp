// SPDX-License-Identifier: Apache-2.0

#include "misr/fading.hpp"

#include <cmath>
#include <random>

#include "misr/errors.hpp"

namespace misr::fading {

FadingModel FadingModel::nakagami(double m) {
  if (!(m >= 0.5)) throw invalid_parameter("nakagami shape m must be >= 0.5");
  return {Kind::nakagami, m};
}

std::string FadingModel::name() const {
  switch (kind) {
    case Kind::none:
      return "none";
    case Kind::rayleigh:
      return "rayleigh";
    case Kind::nakagami:
      return "nakagami:" + std::to_string(m);
  }
  return "?";
}

double sample_gain(const FadingModel& model, rng::SplitMix64& stream) {
  switch (model.kind) {
    case Kind::none:
      return 1.0;
    case Kind::rayleigh:
      return stream.exponential();
    case Kind::nakagami: {
      if (!(model.m >= 0.5))
        throw invalid_parameter("nakagami shape m must be >= 0.5");
      // Integer shapes: Gamma(m, 1/m) is a sum of m unit exponentials
      // scaled by 1/m, i.e. -log(u_1 ... u_m)/m. One log instead of a
      // rejection sampler; the inner loops draw this per interferer.
      const double mi = model.m;
      if (mi == std::floor(mi) && mi <= 16.0) {
        double prod = 1.0;
        for (int j = 0; j < static_cast<int>(mi); ++j)
          prod *= 1.0 - stream.uniform01();
        return -std::log(prod) / mi;
      }
      std::gamma_distribution<double> gamma(mi, 1.0 / mi);
      return gamma(stream);
    }
  }
  throw invalid_parameter("unknown fading model");
}

SmallXExpansion small_x_cdf_exponent(const FadingModel& model) {
  switch (model.kind) {
    case Kind::none:
      throw no_small_x_expansion(
          "non-fading channel has no small-x cdf power law");
    case Kind::rayleigh:
      return {1.0, 1.0};  // 1 - exp(-x) ~ x
    case Kind::nakagami: {
      // F_h(x) ~ (m x)^m / Gamma(m+1); log domain keeps large m safe.
      const double a =
          std::exp(model.m * std::log(model.m) - std::lgamma(model.m + 1.0));
      return {a, model.m};
    }
  }
  throw invalid_parameter("unknown fading model");
}

}  // namespace misr::fading
