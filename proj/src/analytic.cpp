// SPDX-License-Identifier: Apache-2.0

#include "misr/analytic.hpp"

#include <cmath>

#include "misr/errors.hpp"

namespace misr::analytic {

PathLossExponent::PathLossExponent(double alpha) : alpha_(alpha) {
  if (!(alpha > 2.0))
    throw divergent_misr("path loss exponent must exceed 2; MISR diverges");
  if (!std::isfinite(alpha))
    throw invalid_parameter("path loss exponent must be finite");
}

GainReport GainReport::from_misr(double baseline, double scheme) {
  GainReport g{};
  g.misr_baseline = baseline;
  g.misr_scheme = scheme;
  g.gain_linear = baseline / scheme;
  g.gain_db = 10.0 * std::log10(g.gain_linear);
  return g;
}

namespace {

void check_theta(double theta) {
  if (!(theta > 0.0)) throw domain_error("theta must be positive");
}

void check_alpha4(const PathLossExponent& alpha) {
  if (alpha.value() != 4.0)
    throw unsupported_exponent("closed-form ccdf exists only at alpha = 4");
}

}  // namespace

double ccdf_hip_alpha4(double theta) {
  check_theta(theta);
  const double s = std::sqrt(theta);
  return 1.0 / (1.0 + s * std::atan(s));
}

double ccdf_worstcase_coop3_alpha4(double theta) {
  check_theta(theta);
  const double u = std::sqrt(theta / 3.0);
  const double base = 1.0 + u * std::atan(u);
  return 1.0 / (base * base);
}

double sir_ccdf_hip(const PathLossExponent& alpha, double theta) {
  check_alpha4(alpha);
  return ccdf_hip_alpha4(theta);
}

double sir_ccdf_worstcase_coop3(const PathLossExponent& alpha, double theta) {
  check_alpha4(alpha);
  return ccdf_worstcase_coop3_alpha4(theta);
}

double moment_nu(long k, const PathLossExponent& alpha) {
  if (k < 1) throw invalid_parameter("moment index k must be >= 1");
  const double h = alpha.value() * 0.5;
  const double kd = static_cast<double>(k);
  return std::exp(std::lgamma(1.0 + h) + std::lgamma(kd) - std::lgamma(kd + h));
}

double misr_ppp(const PathLossExponent& alpha) {
  return 2.0 / (alpha.value() - 2.0);
}

double misr_silencing(long n, const PathLossExponent& alpha) {
  if (n < 0) throw invalid_parameter("silenced count n must be >= 0");
  const double a = alpha.value();
  const double h = a * 0.5;
  const double nd = static_cast<double>(n);
  const double ratio =
      std::exp(std::lgamma(1.0 + h) + std::lgamma(nd + 2.0) -
               std::lgamma(nd + 1.0 + h));
  return 2.0 / (a - 2.0) * ratio;
}

GainReport gain_silencing(long n, const PathLossExponent& alpha) {
  return GainReport::from_misr(misr_ppp(alpha), misr_silencing(n, alpha));
}

double misr_worstcase(const PathLossExponent& alpha) {
  return 2.0 + 4.0 / (alpha.value() - 2.0);
}

double misr_worstcase_coop(int n, const PathLossExponent& alpha) {
  if (n < 1 || n > 3)
    throw invalid_parameter("cooperating set size n must be in {1, 2, 3}");
  const double a = alpha.value();
  return (4.0 + (3.0 - n) * (a - 2.0)) / (n * (a - 2.0));
}

GainReport gain_coop(int n, const PathLossExponent& alpha) {
  return GainReport::from_misr(misr_worstcase(alpha),
                               misr_worstcase_coop(n, alpha));
}

double shifted_ccdf(const CcdfFn& base, double gain_linear, double theta) {
  if (!(gain_linear > 0.0))
    throw invalid_parameter("gain_linear must be positive");
  return base(theta / gain_linear);
}

}  // namespace misr::analytic
