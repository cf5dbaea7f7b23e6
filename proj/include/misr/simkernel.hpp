// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "misr/distribution.hpp"
#include "misr/fading.hpp"
#include "misr/pointfields.hpp"

namespace misr::simkernel {

enum class DeploymentKind { ppp, hip, square_lattice, triangular_lattice };

enum class SchemeKind { baseline, silence, worstcase, worstcase_coop };

struct Scheme {
  SchemeKind kind = SchemeKind::baseline;
  int n = 0;  // silenced interferers, or cooperating set size

  std::string name() const;
};

struct DeploymentSpec {
  DeploymentKind kind = DeploymentKind::ppp;
  double intensity = 1.0;                    // non-HIP models
  std::vector<pointfields::TierSpec> tiers;  // HIP only

  double total_intensity() const;
  std::string name() const;
};

// Full experiment description. Everything that affects results lives here,
// so its fingerprint identifies a sample set exactly.
struct Scenario {
  DeploymentSpec deployment;
  double alpha = 4.0;
  Scheme scheme;
  fading::FadingModel fading = fading::FadingModel::none();
  long window_points = 0;  // expected points in the window; 0 = default
  long realizations = 100000;
  std::uint64_t master_seed = 1;
  bool interferer_fading = false;  // per-interferer fading in the ISR sum

  long effective_window_points() const;
  double window_radius() const;
  void validate() const;
  std::string canonical() const;
  std::uint64_t fingerprint() const;
};

struct IsrSampleSet {
  std::vector<double> values;  // one ISR per accepted realization
  std::uint64_t fingerprint = 0;
  long rejected = 0;  // realizations resampled (e.g. no vertex in window)
};

struct MisrEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  long n = 0;
  // Fraction of the moment carried by the largest 1% of samples; a value
  // above 0.5 flags an estimate dominated by its tail.
  double tail_share = 0.0;

  bool heavy_tail() const { return tail_share > 0.5; }
};

// One ISR draw from a fresh deployment under substream(master_seed, index).
double isr_realization(const Scenario& s, long index);

IsrSampleSet isr_samples(const Scenario& s);

MisrEstimate estimate_misr(const Scenario& s);

// Mean of ISR^m with standard error; m in (0, 4].
MisrEstimate estimate_isr_moment(const Scenario& s, double m);

// One SIR = h / ISR per realization; h and the deployment use independent
// substreams. With fading "none", SIR = 1/ISR exactly.
std::vector<double> sir_samples(const Scenario& s);

distribution::EmpiricalCcdf sir_ccdf(const Scenario& s,
                                     const distribution::ThetaGrid& grid);

struct MomentGain {
  double m;
  MisrEstimate baseline;  // scenario 1
  MisrEstimate scheme;    // scenario 2
  double gain_linear;     // (E1 / E2)^(1/m)
  double gain_db;
};

// Gain of scenario 2 over scenario 1 from m-th ISR moments.
MomentGain gain_from_moments(const Scenario& s1, const Scenario& s2, double m);

namespace detail {

int worker_count();

// Sample summary shared by the estimators (two-pass, index order, so the
// result is independent of how realizations were scheduled).
MisrEstimate summarize(std::span<const double> values, double m);

// ISR for a probe at the origin of an explicit deployment; test hook that
// runs the same kernel path as the engine.
double isr_for_deployment(const pointfields::Deployment& d, double alpha,
                          const Scheme& scheme);

// ISR for a worst-case probe at a tessellation vertex of a single-tier
// deployment; coop_n = 1 means single-BS service.
double isr_at_site(const pointfields::PointSet& points,
                   const pointfields::WorstCaseSite& site, double alpha,
                   int coop_n);

}  // namespace detail

}  // namespace misr::simkernel
