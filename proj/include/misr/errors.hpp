// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

namespace misr {

// Argument violates an operation's precondition (bad intensity, bad n, ...).
struct invalid_parameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input outside the mathematical domain of a closed form (theta <= 0, p >= 1).
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

// MISR closed forms diverge for path loss exponents <= 2.
struct divergent_misr : std::domain_error {
  using std::domain_error::domain_error;
};

// Closed form only exists at alpha = 4.
struct unsupported_exponent : std::domain_error {
  using std::domain_error::domain_error;
};

// Simulation window cannot hold the requested structure.
struct insufficient_window : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fewer points than a geometric operation needs.
struct insufficient_points : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No small-x power-law expansion exists (non-fading channel).
struct no_small_x_expansion : std::domain_error {
  using std::domain_error::domain_error;
};

// Probability outside the range spanned by a ccdf; message names the range.
struct out_of_range_probability : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Too few outage events to fit a diversity slope.
struct insufficient_resolution : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Config file syntax or schema violation; message carries file:line.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace misr
