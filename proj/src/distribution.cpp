// SPDX-License-Identifier: Apache-2.0

#include "misr/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "misr/errors.hpp"

namespace misr::distribution {

namespace {

double round_sig9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return std::strtod(buf, nullptr);
}

void check_grid(const std::vector<double>& lin) {
  if (lin.empty()) throw invalid_parameter("theta grid must be nonempty");
  for (std::size_t i = 0; i < lin.size(); ++i) {
    if (!(lin[i] > 0.0))
      throw invalid_parameter("theta grid values must be positive");
    if (i > 0 && !(lin[i] > lin[i - 1]))
      throw invalid_parameter("theta grid must be strictly increasing");
  }
}

}  // namespace

ThetaGrid ThetaGrid::from_db_range(double lo_db, double hi_db, double step_db) {
  if (!(step_db > 0.0) || !(hi_db >= lo_db))
    throw invalid_parameter("bad theta grid range");
  std::vector<double> db;
  const long count = static_cast<long>(std::floor((hi_db - lo_db) / step_db + 0.5)) + 1;
  db.reserve(count);
  for (long i = 0; i < count; ++i) db.push_back(lo_db + step_db * i);
  return from_db_values(std::move(db));
}

ThetaGrid ThetaGrid::from_db_values(std::vector<double> db) {
  ThetaGrid g;
  g.theta_db = std::move(db);
  for (double& v : g.theta_db) v = round_sig9(v);
  g.theta_lin.reserve(g.theta_db.size());
  for (double v : g.theta_db) g.theta_lin.push_back(std::pow(10.0, v / 10.0));
  check_grid(g.theta_lin);
  return g;
}

double EmpiricalCcdf::stderr_at(std::size_t i) const {
  if (n_samples <= 0) return 0.0;
  const double p = probs[i];
  return std::sqrt(std::max(p * (1.0 - p), 0.0) / n_samples);
}

EmpiricalCcdf empirical_ccdf(std::span<const double> samples,
                             const ThetaGrid& grid) {
  if (samples.empty()) throw invalid_parameter("need at least 1 sample");
  check_grid(grid.theta_lin);
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  EmpiricalCcdf out;
  out.theta_db = grid.theta_db;
  out.theta_lin = grid.theta_lin;
  out.n_samples = static_cast<long>(sorted.size());
  out.probs.reserve(grid.theta_lin.size());
  out.exceed.reserve(grid.theta_lin.size());
  for (double t : grid.theta_lin) {
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), t);
    const long gt = static_cast<long>(sorted.end() - it);
    out.exceed.push_back(gt);
    out.probs.push_back(static_cast<double>(gt) / out.n_samples);
  }
  return out;
}

EmpiricalCcdf tabulate_ccdf(const std::function<double(double)>& ccdf,
                            const ThetaGrid& grid) {
  check_grid(grid.theta_lin);
  EmpiricalCcdf out;
  out.theta_db = grid.theta_db;
  out.theta_lin = grid.theta_lin;
  out.n_samples = 0;
  out.probs.reserve(grid.theta_lin.size());
  for (double t : grid.theta_lin) out.probs.push_back(ccdf(t));
  return out;
}

double inverse_ccdf(const EmpiricalCcdf& ccdf, double p) {
  const auto& probs = ccdf.probs;
  const auto& theta = ccdf.theta_lin;
  if (probs.size() < 2)
    throw invalid_parameter("ccdf needs at least 2 grid points to invert");
  const double hi = probs.front();
  const double lo = probs.back();
  if (!(p < hi) || !(p > lo)) {
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "p=%.9g outside the achievable ccdf range (%.9g, %.9g)", p,
                  lo, hi);
    throw out_of_range_probability(msg);
  }
  // First index with probs[k] <= p; predecessor is > p.
  const auto it = std::lower_bound(probs.begin(), probs.end(), p,
                                   [](double v, double target) { return v > target; });
  const std::size_t k = static_cast<std::size_t>(it - probs.begin());
  const std::size_t j = k - 1;
  const double t = (probs[j] - p) / (probs[j] - probs[k]);
  const double lt = std::log(theta[j]) + t * (std::log(theta[k]) - std::log(theta[j]));
  return std::exp(lt);
}

double inverse_ccdf(const std::function<double(double)>& ccdf, double p) {
  if (!(p > 0.0) || !(p < 1.0))
    throw domain_error("target probability must lie in (0, 1)");
  double lo = 1.0, hi = 1.0;
  int guard = 0;
  while (ccdf(lo) <= p) {
    lo *= 0.5;
    if (++guard > 2000) throw domain_error("ccdf inversion failed to bracket");
  }
  guard = 0;
  while (ccdf(hi) >= p) {
    hi *= 2.0;
    if (++guard > 2000) throw domain_error("ccdf inversion failed to bracket");
  }
  // ccdf(lo) > p > ccdf(hi); bisect on the decreasing function.
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double v = ccdf(mid);
    if (std::abs(v - p) < 1e-10) return mid;
    if (v > p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double horizontal_gap(const EmpiricalCcdf& reference,
                      const EmpiricalCcdf& scheme, double p) {
  return 10.0 *
         std::log10(inverse_ccdf(scheme, p) / inverse_ccdf(reference, p));
}

double horizontal_gap(const std::function<double(double)>& reference,
                      const std::function<double(double)>& scheme, double p) {
  return 10.0 *
         std::log10(inverse_ccdf(scheme, p) / inverse_ccdf(reference, p));
}

namespace {

// d(theta)/d(p) from the bracketing grid segment, evaluated in log-theta.
double quantile_var_log(const EmpiricalCcdf& c, double p) {
  if (c.n_samples <= 0) return 0.0;
  const auto it = std::lower_bound(c.probs.begin(), c.probs.end(), p,
                                   [](double v, double t) { return v > t; });
  std::size_t k = static_cast<std::size_t>(it - c.probs.begin());
  k = std::min(std::max<std::size_t>(k, 1), c.probs.size() - 1);
  const std::size_t j = k - 1;
  const double dp = c.probs[j] - c.probs[k];
  const double dlt = std::log(c.theta_lin[k]) - std::log(c.theta_lin[j]);
  if (!(dp > 0.0)) return 0.0;
  const double slope = dlt / dp;  // d log(theta) / dp
  const double var_p = p * (1.0 - p) / c.n_samples;
  return slope * slope * var_p;
}

}  // namespace

double horizontal_gap_stderr(const EmpiricalCcdf& reference,
                             const EmpiricalCcdf& scheme, double p) {
  const double v = quantile_var_log(reference, p) + quantile_var_log(scheme, p);
  return 10.0 / std::log(10.0) * std::sqrt(v);
}

double diversity_estimate(const EmpiricalCcdf& ccdf) {
  const std::size_t n = ccdf.probs.size();
  std::size_t start = n;
  for (std::size_t i = 0; i < n; ++i) {
    const double outage = 1.0 - ccdf.probs[i];
    if (ccdf.n_samples > 0) {
      const long events = ccdf.n_samples - ccdf.exceed[i];
      if (events >= 100) {
        start = i;
        break;
      }
    } else if (outage > 0.0) {
      start = i;
      break;
    }
  }
  if (start >= n)
    throw insufficient_resolution(
        "no grid point reaches 100 outage events; need more samples or a "
        "lower theta grid");
  const double t0 = ccdf.theta_lin[start];
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long cnt = 0;
  for (std::size_t i = start; i < n && ccdf.theta_lin[i] <= 10.0 * t0 * (1 + 1e-12); ++i) {
    const double outage = 1.0 - ccdf.probs[i];
    if (!(outage > 0.0)) continue;
    const double x = std::log10(ccdf.theta_lin[i]);
    const double y = std::log10(outage);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt < 2)
    throw insufficient_resolution(
        "fewer than 2 usable grid points in the diversity fitting window");
  const double denom = cnt * sxx - sx * sx;
  return (cnt * sxy - sx * sy) / denom;
}

}  // namespace misr::distribution
