// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <vector>

namespace misr::distribution {

// Threshold grid, canonically in dB; linear values are derived. Grid dB
// values are rounded through the 9-significant-digit text form so a grid
// written to CSV and read back is identical.
struct ThetaGrid {
  std::vector<double> theta_db;
  std::vector<double> theta_lin;

  static ThetaGrid from_db_range(double lo_db, double hi_db, double step_db);
  static ThetaGrid from_db_values(std::vector<double> db);
};

// Tabulated estimate of P(SIR > theta) on a grid.
struct EmpiricalCcdf {
  std::vector<double> theta_db;
  std::vector<double> theta_lin;
  std::vector<double> probs;      // non-increasing
  long n_samples = 0;             // 0: exact tabulation of an analytic ccdf
  std::vector<long> exceed;       // samples > theta (empty when analytic)

  // Binomial standard error of probs[i]; 0 for analytic tabulations.
  double stderr_at(std::size_t i) const;
};

EmpiricalCcdf empirical_ccdf(std::span<const double> samples,
                             const ThetaGrid& grid);

// Exact tabulation of an analytic ccdf on a grid (n_samples = 0).
EmpiricalCcdf tabulate_ccdf(const std::function<double(double)>& ccdf,
                            const ThetaGrid& grid);

// Inverse ccdf. The empirical variant interpolates linearly in log(theta)
// between bracketing grid points; the analytic variant bisects to 1e-10.
double inverse_ccdf(const EmpiricalCcdf& ccdf, double p);
double inverse_ccdf(const std::function<double(double)>& ccdf, double p);

// Horizontal gap in dB at success probability p: 10 log10 of the ratio of
// inverse ccdfs, scheme (2) over reference (1).
double horizontal_gap(const EmpiricalCcdf& reference,
                      const EmpiricalCcdf& scheme, double p);
double horizontal_gap(const std::function<double(double)>& reference,
                      const std::function<double(double)>& scheme, double p);

// Standard error of the gap estimate at p, in dB, from binomial quantile
// noise of both empirical curves (delta method on the local ccdf slope).
double horizontal_gap_stderr(const EmpiricalCcdf& reference,
                             const EmpiricalCcdf& scheme, double p);

// Least-squares slope of log10(outage) vs log10(theta) over one decade
// starting at the smallest grid point with at least 100 outage events.
double diversity_estimate(const EmpiricalCcdf& ccdf);

}  // namespace misr::distribution
