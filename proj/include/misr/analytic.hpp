// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

namespace misr::analytic {

// Path loss law is l(r) = r^-alpha. MISR-type quantities diverge at
// alpha <= 2, so the type refuses to exist there.
class PathLossExponent {
 public:
  explicit PathLossExponent(double alpha);
  double value() const { return alpha_; }

 private:
  double alpha_;
};

struct GainReport {
  double misr_baseline;
  double misr_scheme;
  double gain_linear;  // misr_baseline / misr_scheme
  double gain_db;      // 10 log10(gain_linear)

  static GainReport from_misr(double baseline, double scheme);
};

// SIR ccdf of the typical user under Poisson base stations with strongest-BS
// association, alpha = 4:  1 / (1 + sqrt(t) atan sqrt(t)).
double ccdf_hip_alpha4(double theta);

// SIR ccdf of a worst-case (cell-vertex) user served jointly by its 3
// equidistant base stations, alpha = 4.
double ccdf_worstcase_coop3_alpha4(double theta);

// Dispatchers that take alpha explicitly and reject anything but 4 with
// unsupported_exponent; there is no closed form elsewhere.
double sir_ccdf_hip(const PathLossExponent& alpha, double theta);
double sir_ccdf_worstcase_coop3(const PathLossExponent& alpha, double theta);

// E(nu_k^alpha) where nu_k is the distance ratio R_1/R_k between the serving
// and k-th nearest base station: Gamma(1+a/2) Gamma(k) / Gamma(k+a/2).
// Evaluated in the log domain so k up to 1e6 cannot overflow.
double moment_nu(long k, const PathLossExponent& alpha);

// Baseline MISR of the Poisson network: 2 / (alpha - 2).
double misr_ppp(const PathLossExponent& alpha);

// MISR when the n strongest interferers (on average) are silenced.
double misr_silencing(long n, const PathLossExponent& alpha);
GainReport gain_silencing(long n, const PathLossExponent& alpha);

// Worst-case user at a cell vertex: 2 + 4/(alpha-2) without cooperation,
// and (4 + (3-n)(alpha-2)) / (n (alpha-2)) when n of the 3 equidistant base
// stations transmit jointly. n = 1 reduces to the no-cooperation value.
double misr_worstcase(const PathLossExponent& alpha);
double misr_worstcase_coop(int n, const PathLossExponent& alpha);
GainReport gain_coop(int n, const PathLossExponent& alpha);

using CcdfFn = std::function<double(double)>;

// MISR-shift approximation: a scheme with gain G has ccdf base(theta / G).
double shifted_ccdf(const CcdfFn& base, double gain_linear, double theta);

}  // namespace misr::analytic
