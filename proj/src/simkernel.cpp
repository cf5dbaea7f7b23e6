// SPDX-License-Identifier: Apache-2.0

#include "misr/simkernel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <random>
#include <thread>

#include "misr/analytic.hpp"
#include "misr/errors.hpp"
#include "misr/kernels.hpp"
#include "misr/rng.hpp"

namespace misr::simkernel {

namespace {

constexpr double kPi = std::numbers::pi;

// Substream roles; a rejected realization retries with role + 8 * attempt.
enum Role : std::uint64_t {
  kPoints = 0,
  kTiers = 1,
  kFading = 2,
  kSelect = 3,
  kInterferenceFading = 4,
};
constexpr std::uint64_t kRoleStride = 8;
constexpr int kMaxRetries = 64;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string Scheme::name() const {
  switch (kind) {
    case SchemeKind::baseline:
      return "baseline";
    case SchemeKind::silence:
      return "silence:" + std::to_string(n);
    case SchemeKind::worstcase:
      return "worstcase";
    case SchemeKind::worstcase_coop:
      return "worstcase_coop:" + std::to_string(n);
  }
  return "?";
}

double DeploymentSpec::total_intensity() const {
  if (kind == DeploymentKind::hip) {
    double t = 0.0;
    for (const auto& tier : tiers) t += tier.intensity;
    return t;
  }
  return intensity;
}

std::string DeploymentSpec::name() const {
  switch (kind) {
    case DeploymentKind::ppp:
      return "ppp";
    case DeploymentKind::hip: {
      std::string s = "hip[";
      for (std::size_t i = 0; i < tiers.size(); ++i) {
        if (i) s += ",";
        s += format_double(tiers[i].intensity) + ":" +
             format_double(tiers[i].power);
      }
      return s + "]";
    }
    case DeploymentKind::square_lattice:
      return "square";
    case DeploymentKind::triangular_lattice:
      return "triangular";
  }
  return "?";
}

long Scenario::effective_window_points() const {
  if (window_points > 0) return window_points;
  // Truncation error of the ISR tail grows as alpha drops toward 2; widen
  // the window below alpha = 3.
  return alpha < 3.0 ? 10000 : 2000;
}

double Scenario::window_radius() const {
  return std::sqrt(static_cast<double>(effective_window_points()) /
                   (kPi * deployment.total_intensity()));
}

void Scenario::validate() const {
  analytic::PathLossExponent check_alpha(alpha);  // throws for alpha <= 2
  if (realizations < 1) throw invalid_parameter("realizations must be >= 1");
  if (window_points != 0 && window_points < 100)
    throw invalid_parameter("window_points must be >= 100");
  if (deployment.kind == DeploymentKind::hip) {
    if (deployment.tiers.empty())
      throw invalid_parameter("HIP deployment needs at least one tier");
    for (const auto& t : deployment.tiers)
      if (!(t.intensity > 0.0) || !(t.power > 0.0))
        throw invalid_parameter("tier intensity and power must be positive");
  } else if (!(deployment.intensity > 0.0)) {
    throw invalid_parameter("deployment intensity must be positive");
  }
  switch (scheme.kind) {
    case SchemeKind::baseline:
      break;
    case SchemeKind::silence:
      if (scheme.n < 1) throw invalid_parameter("silence(n) requires n >= 1");
      break;
    case SchemeKind::worstcase:
    case SchemeKind::worstcase_coop:
      if (deployment.kind != DeploymentKind::ppp)
        throw invalid_parameter(
            "worst-case schemes are defined for the single-tier PPP only");
      if (scheme.kind == SchemeKind::worstcase_coop &&
          (scheme.n < 2 || scheme.n > 3))
        throw invalid_parameter("worstcase_coop(n) requires n in {2, 3}");
      break;
  }
  if (fading.kind == fading::Kind::nakagami && !(fading.m >= 0.5))
    throw invalid_parameter("nakagami shape m must be >= 0.5");
}

std::string Scenario::canonical() const {
  std::string s;
  s += "deployment=" + deployment.name();
  s += ";intensity=" + format_double(deployment.intensity);
  s += ";alpha=" + format_double(alpha);
  s += ";scheme=" + scheme.name();
  s += ";fading=" + fading.name();
  s += ";window_points=" + std::to_string(effective_window_points());
  s += ";realizations=" + std::to_string(realizations);
  s += ";seed=" + std::to_string(master_seed);
  s += ";interferer_fading=" + std::string(interferer_fading ? "1" : "0");
  return s;
}

std::uint64_t Scenario::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

struct Workspace {
  std::vector<double> r2;
  std::vector<double> terms;
  std::vector<double> xs, ys;
  std::vector<std::uint8_t> tier_of;
};

struct RealizationValue {
  double isr;
  bool ok;
};

// Sum of terms excluding a small index set; exact pass used when the
// subtract-from-total shortcut cancels to nothing.
double sum_excluding(std::span<const double> terms,
                     std::span<const std::size_t> skip) {
  double s = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    bool skipped = false;
    for (std::size_t k : skip) skipped |= (k == i);
    if (!skipped) s += terms[i];
  }
  return s;
}

// Indices of the k largest terms, value-descending, ties toward low index.
void top_k_indices(std::span<const double> v, int k,
                   std::vector<std::size_t>& out) {
  out.clear();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double val = v[i];
    std::size_t pos = out.size();
    while (pos > 0 && v[out[pos - 1]] < val) --pos;
    if (pos < static_cast<std::size_t>(k)) {
      out.insert(out.begin() + pos, i);
      if (out.size() > static_cast<std::size_t>(k)) out.pop_back();
    }
  }
}

double apply_interferer_fading(const Scenario& s, std::span<const double> terms,
                               std::span<const std::size_t> excluded,
                               long index, int attempt) {
  auto g = rng::substream(s.master_seed, static_cast<std::uint64_t>(index),
                          kInterferenceFading + kRoleStride * attempt);
  double sum = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double h = fading::sample_gain(s.fading, g);
    bool skipped = false;
    for (std::size_t k : excluded) skipped |= (k == i);
    if (!skipped) sum += h * terms[i];
  }
  return sum;
}

// One attempt at a baseline/silence/HIP/lattice realization (probe at the
// origin, which for lattices is a uniform position in a cell thanks to the
// random translation). With fade_interference the interference sum carries
// one fading draw per interferer, as in the ISR definition; without it the
// sum is the conditional mean, which is all the MISR needs.
RealizationValue attempt_origin(const Scenario& s, long index, int attempt,
                                bool fade_interference, Workspace& w) {
  auto g = rng::substream(s.master_seed, static_cast<std::uint64_t>(index),
                          kPoints + kRoleStride * attempt);
  const double radius = s.window_radius();
  const double lam = s.deployment.total_intensity();
  const int silenced = s.scheme.kind == SchemeKind::silence ? s.scheme.n : 0;
  const auto& K = kernels::active();
  const auto pw = kernels::neg_half_pow(s.alpha);

  long count = 0;
  const bool lattice = s.deployment.kind == DeploymentKind::square_lattice ||
                       s.deployment.kind == DeploymentKind::triangular_lattice;
  if (lattice) {
    const auto kind = s.deployment.kind == DeploymentKind::square_lattice
                          ? pointfields::LatticeKind::square
                          : pointfields::LatticeKind::triangular;
    const double u = g.uniform01();
    const double v = g.uniform01();
    pointfields::detail::lattice_points(kind, lam, radius, u, v, w.xs, w.ys);
    count = static_cast<long>(w.xs.size());
    if (count < 2 + silenced) return {0.0, false};
    w.r2.resize(count);
    K.squared_norms(w.xs.data(), w.ys.data(), static_cast<std::size_t>(count),
                    w.r2.data());
  } else {
    std::poisson_distribution<long> count_dist(lam * kPi * radius * radius);
    count = count_dist(g);
    if (count < 2 + silenced) return {0.0, false};
    w.r2.resize(count);
    const double r2cap = radius * radius;
    for (long i = 0; i < count; ++i) w.r2[i] = r2cap * g.uniform01();
  }

  const bool multi_tier = s.deployment.kind == DeploymentKind::hip &&
                          s.deployment.tiers.size() > 1;
  w.terms.resize(count);
  double total = K.pow_sum(w.r2.data(), static_cast<std::size_t>(count), pw,
                           1.0, w.terms.data());
  if (multi_tier) {
    auto tg = rng::substream(s.master_seed, static_cast<std::uint64_t>(index),
                             kTiers + kRoleStride * attempt);
    const auto& tiers = s.deployment.tiers;
    const double lam_total = s.deployment.total_intensity();
    total = 0.0;
    for (long i = 0; i < count; ++i) {
      const double u = tg.uniform01() * lam_total;
      double acc = 0.0;
      double power = tiers.back().power;
      for (const auto& t : tiers) {
        acc += t.intensity;
        if (u < acc) {
          power = t.power;
          break;
        }
      }
      w.terms[i] *= power;
      total += w.terms[i];
    }
  }

  const std::size_t serving =
      K.argmax(w.terms.data(), static_cast<std::size_t>(count));
  const double serving_term = w.terms[serving];

  std::vector<std::size_t> removed;
  if (silenced > 0) {
    top_k_indices(w.terms, silenced + 1, removed);
  } else {
    removed.assign(1, serving);
  }

  double interference;
  if (fade_interference) {
    interference = apply_interferer_fading(s, w.terms, removed, index, attempt);
  } else {
    double removed_sum = 0.0;
    for (std::size_t k : removed) removed_sum += w.terms[k];
    interference = total - removed_sum;
    if (!(interference > 0.0)) interference = sum_excluding(w.terms, removed);
  }
  if (!(interference > 0.0)) return {0.0, false};
  return {interference / serving_term, true};
}

// One attempt at a worst-case realization (probe at a tessellation vertex).
RealizationValue attempt_worstcase(const Scenario& s, long index, int attempt,
                                   bool fade_interference, Workspace& w) {
  auto g = rng::substream(s.master_seed, static_cast<std::uint64_t>(index),
                          kPoints + kRoleStride * attempt);
  const double radius = s.window_radius();
  const double lam = s.deployment.total_intensity();
  std::poisson_distribution<long> count_dist(lam * kPi * radius * radius);
  const long count = count_dist(g);
  if (count < 3) return {0.0, false};

  w.xs.resize(count);
  w.ys.resize(count);
  const double r2cap = radius * radius;
  for (long i = 0; i < count; ++i) {
    const double r = std::sqrt(r2cap * g.uniform01());
    const double phi = 2.0 * kPi * g.uniform01();
    w.xs[i] = r * std::cos(phi);
    w.ys[i] = r * std::sin(phi);
  }

  const auto sites = pointfields::detail::voronoi_vertices_xy(
      w.xs, w.ys, radius, 0.5 * radius);
  if (sites.empty()) return {0.0, false};

  auto sel = rng::substream(s.master_seed, static_cast<std::uint64_t>(index),
                            kSelect + kRoleStride * attempt);
  auto pick = static_cast<std::size_t>(sel.uniform01() *
                                       static_cast<double>(sites.size()));
  pick = std::min(pick, sites.size() - 1);
  const auto& site = sites[pick];

  const int coop = s.scheme.kind == SchemeKind::worstcase_coop ? s.scheme.n : 1;
  const auto& K = kernels::active();
  const auto pw = kernels::neg_half_pow(s.alpha);
  w.r2.resize(count);
  K.squared_dists(w.xs.data(), w.ys.data(), static_cast<std::size_t>(count),
                  site.x, site.y, w.r2.data());
  w.terms.resize(count);
  const double total = K.pow_sum(
      w.r2.data(), static_cast<std::size_t>(count), pw, 1.0, w.terms.data());

  std::vector<std::size_t> serving_set(site.triple.begin(),
                                       site.triple.begin() + coop);
  double signal = 0.0;
  for (std::size_t k : serving_set) signal += w.terms[k];

  double interference;
  if (fade_interference) {
    interference =
        apply_interferer_fading(s, w.terms, serving_set, index, attempt);
  } else {
    interference = total - signal;
    if (!(interference > 0.0))
      interference = sum_excluding(w.terms, serving_set);
  }
  if (!(interference > 0.0)) return {0.0, false};
  return {interference / signal, true};
}

double realize(const Scenario& s, long index, bool fade_interference,
               Workspace& w, long& rejected) {
  const bool worst = s.scheme.kind == SchemeKind::worstcase ||
                     s.scheme.kind == SchemeKind::worstcase_coop;
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    const RealizationValue v =
        worst ? attempt_worstcase(s, index, attempt, fade_interference, w)
              : attempt_origin(s, index, attempt, fade_interference, w);
    if (v.ok) return v.isr;
    ++rejected;
  }
  throw std::runtime_error(
      "realization kept failing after " + std::to_string(kMaxRetries) +
      " attempts; scenario fingerprint " + std::to_string(s.fingerprint()));
}

struct RunOutput {
  std::vector<double> isr;
  std::vector<double> sir;
  long rejected = 0;
};

RunOutput run_engine(const Scenario& s, bool want_sir) {
  s.validate();
  const long n = s.realizations;
  RunOutput out;
  out.isr.resize(n);
  if (want_sir) out.sir.resize(n);

  // The SIR law carries fading on every link, so SIR sampling always draws
  // per-interferer gains (unless the channel has no fading at all). Plain
  // ISR sampling leaves them out by default: the MISR does not see them.
  const bool fade_interference =
      s.interferer_fading ||
      (want_sir && s.fading.kind != fading::Kind::none);

  const int workers =
      static_cast<int>(std::min<long>(detail::worker_count(), n));
  std::atomic<long> rejected{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mutex;

  auto work = [&](long lo, long hi) {
    Workspace w;
    long local_rejected = 0;
    try {
      for (long i = lo; i < hi && !failed.load(std::memory_order_relaxed);
           ++i) {
        out.isr[i] = realize(s, i, fade_interference, w, local_rejected);
        if (want_sir) {
          auto fg = rng::substream(s.master_seed,
                                   static_cast<std::uint64_t>(i), kFading);
          out.sir[i] = fading::sample_gain(s.fading, fg) / out.isr[i];
        }
      }
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(error_mutex);
      error_message = e.what();
      failed.store(true);
    }
    rejected.fetch_add(local_rejected);
  };

  if (workers <= 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
      const long lo = n * t / workers;
      const long hi = n * (t + 1) / workers;
      pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  if (failed.load()) throw std::runtime_error(error_message);
  out.rejected = rejected.load();
  return out;
}

}  // namespace

double isr_realization(const Scenario& s, long index) {
  s.validate();
  if (index < 0 || index >= s.realizations)
    throw invalid_parameter("realization index out of range");
  Workspace w;
  long rejected = 0;
  return realize(s, index, s.interferer_fading, w, rejected);
}

IsrSampleSet isr_samples(const Scenario& s) {
  RunOutput r = run_engine(s, false);
  IsrSampleSet set;
  set.values = std::move(r.isr);
  set.fingerprint = s.fingerprint();
  set.rejected = r.rejected;
  return set;
}

MisrEstimate estimate_misr(const Scenario& s) {
  const IsrSampleSet set = isr_samples(s);
  return detail::summarize(set.values, 1.0);
}

MisrEstimate estimate_isr_moment(const Scenario& s, double m) {
  if (!(m > 0.0) || m > 4.0)
    throw invalid_parameter(
        "moment order m must lie in (0, 4]; higher moments are too "
        "tail-sensitive to estimate");
  const IsrSampleSet set = isr_samples(s);
  return detail::summarize(set.values, m);
}

std::vector<double> sir_samples(const Scenario& s) {
  return run_engine(s, true).sir;
}

distribution::EmpiricalCcdf sir_ccdf(const Scenario& s,
                                     const distribution::ThetaGrid& grid) {
  return distribution::empirical_ccdf(sir_samples(s), grid);
}

MomentGain gain_from_moments(const Scenario& s1, const Scenario& s2, double m) {
  MomentGain g;
  g.m = m;
  g.baseline = estimate_isr_moment(s1, m);
  g.scheme = estimate_isr_moment(s2, m);
  g.gain_linear = std::pow(g.baseline.mean / g.scheme.mean, 1.0 / m);
  g.gain_db = 10.0 * std::log10(g.gain_linear);
  return g;
}

namespace detail {

int worker_count() {
  if (const char* env = std::getenv("MISR_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v <= 1024) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

MisrEstimate summarize(std::span<const double> values, double m) {
  if (values.empty()) throw invalid_parameter("empty sample set");
  std::vector<double> powered;
  const bool identity = m == 1.0;
  if (!identity) {
    powered.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
      powered[i] = std::pow(values[i], m);
  }
  std::span<const double> v = identity ? values : std::span<const double>(powered);

  MisrEstimate e;
  e.n = static_cast<long>(v.size());
  double sum = 0.0;
  for (double x : v) sum += x;
  e.mean = sum / e.n;
  if (e.n > 1) {
    double ss = 0.0;
    for (double x : v) {
      const double d = x - e.mean;
      ss += d * d;
    }
    e.stderr_ = std::sqrt(ss / (e.n - 1)) / std::sqrt(static_cast<double>(e.n));
  }
  // Tail concentration: share of the sum carried by the top 1% of samples.
  std::vector<double> sorted(v.begin(), v.end());
  const std::size_t k =
      std::max<std::size_t>(1, (sorted.size() + 99) / 100);
  std::nth_element(sorted.begin(), sorted.end() - k, sorted.end());
  double top = 0.0;
  for (std::size_t i = sorted.size() - k; i < sorted.size(); ++i)
    top += sorted[i];
  e.tail_share = sum > 0.0 ? top / sum : 0.0;
  return e;
}

double isr_for_deployment(const pointfields::Deployment& d, double alpha,
                          const Scheme& scheme) {
  if (scheme.kind == SchemeKind::worstcase ||
      scheme.kind == SchemeKind::worstcase_coop)
    throw invalid_parameter("use isr_at_site for worst-case probes");
  const auto& K = kernels::active();
  const auto pw = kernels::neg_half_pow(alpha);
  std::vector<double> terms;
  double total = 0.0;
  for (const auto& [points, power] : d.tiers) {
    const std::size_t n = points.size();
    std::vector<double> r2(n);
    K.squared_norms(points.xs.data(), points.ys.data(), n, r2.data());
    const std::size_t base = terms.size();
    terms.resize(base + n);
    total += K.pow_sum(r2.data(), n, pw, power, terms.data() + base);
  }
  if (terms.size() < 2) throw insufficient_points("need at least 2 points");
  const std::size_t serving = K.argmax(terms.data(), terms.size());
  std::vector<std::size_t> removed;
  if (scheme.kind == SchemeKind::silence) {
    top_k_indices(terms, scheme.n + 1, removed);
  } else {
    removed.assign(1, serving);
  }
  double removed_sum = 0.0;
  for (std::size_t k : removed) removed_sum += terms[k];
  double interference = total - removed_sum;
  if (!(interference > 0.0)) interference = sum_excluding(terms, removed);
  return interference / terms[serving];
}

double isr_at_site(const pointfields::PointSet& points,
                   const pointfields::WorstCaseSite& site, double alpha,
                   int coop_n) {
  if (coop_n < 1 || coop_n > 3)
    throw invalid_parameter("coop_n must be in {1, 2, 3}");
  const auto& K = kernels::active();
  const auto pw = kernels::neg_half_pow(alpha);
  const std::size_t n = points.size();
  std::vector<double> r2(n), terms(n);
  K.squared_dists(points.xs.data(), points.ys.data(), n, site.x, site.y,
                  r2.data());
  const double total = K.pow_sum(r2.data(), n, pw, 1.0, terms.data());
  std::vector<std::size_t> serving(site.triple.begin(),
                                   site.triple.begin() + coop_n);
  double signal = 0.0;
  for (std::size_t k : serving) signal += terms[k];
  double interference = total - signal;
  if (!(interference > 0.0)) interference = sum_excluding(terms, serving);
  return interference / signal;
}

}  // namespace detail

}  // namespace misr::simkernel
