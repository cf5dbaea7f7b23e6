// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "misr/rng.hpp"

namespace misr::fading {

enum class Kind { none, rayleigh, nakagami };

// Unit-mean power fading. Nakagami-m power fading is gamma distributed with
// shape m and mean 1; m = 1 coincides with Rayleigh.
struct FadingModel {
  Kind kind = Kind::none;
  double m = 1.0;  // nakagami shape, >= 0.5

  static FadingModel none() { return {Kind::none, 1.0}; }
  static FadingModel rayleigh() { return {Kind::rayleigh, 1.0}; }
  static FadingModel nakagami(double m);

  std::string name() const;
};

// One power gain draw; E(h) = 1 for every model.
double sample_gain(const FadingModel& model, rng::SplitMix64& stream);

// Coefficients of the small-x cdf power law F_h(x) ~ a x^m.
struct SmallXExpansion {
  double a;
  double m;
};
SmallXExpansion small_x_cdf_exponent(const FadingModel& model);

}  // namespace misr::fading
