// SPDX-License-Identifier: Apache-2.0
//
// misrtool: scenario runner for SIR distribution experiments.
// Subcommands: misr, ccdf, gain, diversity, validate.

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "misr/analytic.hpp"
#include "misr/distribution.hpp"
#include "misr/errors.hpp"
#include "misr/io.hpp"
#include "misr/kernels.hpp"
#include "misr/simkernel.hpp"
#include "misr/validate.hpp"

namespace {

namespace an = misr::analytic;
namespace dist = misr::distribution;
namespace sim = misr::simkernel;
namespace io = misr::io;

struct ScenarioFlags {
  std::string config;
  std::optional<std::string> deployment, scheme, fading;
  std::optional<double> alpha;
  std::optional<long> realizations, window_points;
  std::optional<std::uint64_t> seed;

  void attach(CLI::App* cmd, bool config_required) {
    auto* c = cmd->add_option("--config,--scenario", config,
                              "scenario config file");
    if (config_required) c->required();
    cmd->add_option("--deployment", deployment,
                    "ppp | hip | square | triangular");
    cmd->add_option("--scheme", scheme,
                    "baseline | silence:n | worstcase | worstcase_coop:n");
    cmd->add_option("--fading", fading, "none | rayleigh | nakagami:m");
    cmd->add_option("--alpha", alpha, "path loss exponent (> 2)");
    cmd->add_option("--realizations", realizations, "Monte Carlo realizations");
    cmd->add_option("--window-points", window_points,
                    "expected points in the simulation window");
    cmd->add_option("--seed", seed, "master seed (u64)");
  }

  sim::Scenario build() const {
    sim::Scenario s;
    if (!config.empty()) s = io::load_config(config).scenario;
    apply(s);
    return s;
  }

  void apply(sim::Scenario& s) const {
    if (deployment) io::set_scenario_field(s, "deployment", *deployment, "--deployment");
    if (scheme) io::set_scenario_field(s, "scheme", *scheme, "--scheme");
    if (fading) io::set_scenario_field(s, "fading", *fading, "--fading");
    if (alpha) s.alpha = *alpha;
    if (realizations) s.realizations = *realizations;
    if (window_points) s.window_points = *window_points;
    if (seed) s.master_seed = *seed;
  }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw misr::config_error(path + ": cannot open for writing");
  out << text;
}

void warn_if_narrow(const sim::Scenario& s) {
  if (s.alpha < 3.0 && s.window_points > 0 && s.window_points < 10000)
    std::cerr << "warning: alpha < 3 converges slowly in the window; "
                 "window_points >= 10000 recommended\n";
}

an::CcdfFn analytic_ccdf_by_name(const std::string& name) {
  if (name == "hip4") return [](double t) { return an::ccdf_hip_alpha4(t); };
  if (name == "coop3_4")
    return [](double t) { return an::ccdf_worstcase_coop3_alpha4(t); };
  throw misr::invalid_parameter("unknown analytic ccdf '" + name +
                                "' (hip4, coop3_4)");
}

int cmd_misr(const ScenarioFlags& flags, double moment,
             const std::string& out_path) {
  sim::Scenario s = flags.build();
  warn_if_narrow(s);
  const sim::MisrEstimate e = moment == 1.0
                                  ? sim::estimate_misr(s)
                                  : sim::estimate_isr_moment(s, moment);
  std::printf("misr(m=%g) %s = %.6g +- %.3g  (n=%ld%s)\n", moment,
              s.scheme.name().c_str(), e.mean, e.stderr_, e.n,
              e.heavy_tail() ? ", heavy tail: top 1% dominates" : "");
  if (!out_path.empty()) write_text(out_path, io::misr_estimate_json(s, e, moment));
  return 0;
}

int cmd_ccdf(const ScenarioFlags& flags, const std::string& analytic_name,
             double grid_lo, double grid_hi, double grid_step,
             const std::string& out_path) {
  const auto grid = dist::ThetaGrid::from_db_range(grid_lo, grid_hi, grid_step);
  dist::EmpiricalCcdf ccdf;
  if (!analytic_name.empty()) {
    ccdf = dist::tabulate_ccdf(analytic_ccdf_by_name(analytic_name), grid);
    std::printf("ccdf analytic:%s on [%g, %g] dB (%zu points)\n",
                analytic_name.c_str(), grid_lo, grid_hi, ccdf.probs.size());
  } else {
    sim::Scenario s = flags.build();
    warn_if_narrow(s);
    ccdf = sim::sir_ccdf(s, grid);
    std::printf("ccdf %s/%s: %ld samples on [%g, %g] dB\n",
                s.deployment.name().c_str(), s.scheme.name().c_str(),
                ccdf.n_samples, grid_lo, grid_hi);
  }
  const std::string csv = io::ccdf_csv_string(ccdf);
  if (out_path.empty())
    std::fputs(csv.c_str(), stdout);
  else
    write_text(out_path, csv);
  return 0;
}

int cmd_gain(const ScenarioFlags& flags, const std::string& reference,
             const std::vector<double>& p_list, double moment,
             double grid_lo, double grid_hi, double grid_step,
             const std::string& out_path) {
  std::optional<sim::Scenario> config_reference;
  sim::Scenario s;
  if (!flags.config.empty()) {
    const io::ConfigFile cfg = io::load_config(flags.config);
    s = cfg.scenario;
    config_reference = cfg.reference;
  }
  flags.apply(s);
  if (reference.empty() && !config_reference)
    throw misr::invalid_parameter(
        "gain needs --reference <config|analytic:name> or a [reference] "
        "section in the config");
  warn_if_narrow(s);
  const auto grid = dist::ThetaGrid::from_db_range(grid_lo, grid_hi, grid_step);
  const auto scheme_ccdf = sim::sir_ccdf(s, grid);

  nlohmann::ordered_json j;
  j["scenario"] = s.canonical();
  std::optional<sim::MomentGain> mg;
  dist::EmpiricalCcdf ref_ccdf;
  if (reference.rfind("analytic:", 0) == 0) {
    ref_ccdf = dist::tabulate_ccdf(analytic_ccdf_by_name(reference.substr(9)),
                                   grid);
    j["reference"] = reference;
  } else {
    sim::Scenario ref = reference.empty()
                            ? *config_reference
                            : io::load_config(reference).scenario;
    ref_ccdf = sim::sir_ccdf(ref, grid);
    j["reference"] = ref.canonical();
    mg = sim::gain_from_moments(ref, s, moment);
    j["misr_baseline"] = io::round_sig9(mg->baseline.mean);
    j["misr_scheme"] = io::round_sig9(mg->scheme.mean);
    j["gain_linear"] = io::round_sig9(mg->gain_linear);
    j["gain_db"] = io::round_sig9(mg->gain_db);
    j["moment"] = io::round_sig9(moment);
    std::printf("asymptotic gain (m=%g): %.4g dB (MISR %.6g -> %.6g)\n",
                moment, mg->gain_db, mg->baseline.mean, mg->scheme.mean);
  }
  nlohmann::ordered_json gaps = nlohmann::ordered_json::object();
  for (double p : p_list) {
    const double g = dist::horizontal_gap(ref_ccdf, scheme_ccdf, p);
    gaps[io::format_sig9(p)] = io::round_sig9(g);
    std::printf("gain at p=%.4g: %.4g dB\n", p, g);
  }
  j["horizontal_gap_db"] = std::move(gaps);
  if (!out_path.empty()) write_text(out_path, j.dump(2) + "\n");
  return 0;
}

int cmd_diversity(const ScenarioFlags& flags, double grid_lo, double grid_hi,
                  double grid_step, const std::string& out_path) {
  sim::Scenario s = flags.build();
  const auto grid = dist::ThetaGrid::from_db_range(grid_lo, grid_hi, grid_step);
  const auto ccdf = sim::sir_ccdf(s, grid);
  const double slope = dist::diversity_estimate(ccdf);
  std::printf("diversity slope: %.4g (n=%ld)\n", slope, ccdf.n_samples);
  if (!out_path.empty()) {
    nlohmann::ordered_json j;
    j["scenario"] = s.canonical();
    j["slope"] = io::round_sig9(slope);
    j["n"] = ccdf.n_samples;
    write_text(out_path, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_validate(bool fast, const std::string& out_path) {
  misr::validate::Options opt;
  opt.fast = fast;
  opt.tool_path = std::filesystem::read_symlink("/proc/self/exe").string();
  const auto results = misr::validate::run_all(opt);
  const int failures = misr::validate::print_report(results, std::cout);
  if (!out_path.empty())
    write_text(out_path, misr::validate::report_json(results));
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SIR distribution analysis via the mean "
               "interference-to-signal ratio"};
  app.require_subcommand(1);

  std::string kernel = "auto";
  app.add_option("--kernel", kernel, "kernel backend: auto | scalar | avx2");

  ScenarioFlags misr_flags, ccdf_flags, gain_flags, div_flags;
  std::string out_path, analytic_name, reference;
  double moment = 1.0;
  std::vector<double> p_list{0.75, 0.8, 0.85, 0.9, 0.95};
  double grid_lo = -30.0, grid_hi = 30.0, grid_step = 0.5;
  bool fast = false;

  auto* c_misr = app.add_subcommand("misr", "estimate MISR or an ISR moment");
  misr_flags.attach(c_misr, false);
  c_misr->add_option("--moment", moment, "ISR moment order m in (0, 4]");
  c_misr->add_option("--out", out_path, "write JSON summary here");

  auto* c_ccdf = app.add_subcommand("ccdf", "tabulate a SIR ccdf as CSV");
  ccdf_flags.attach(c_ccdf, false);
  c_ccdf->add_option("--analytic", analytic_name,
                     "closed form instead of Monte Carlo: hip4 | coop3_4");
  c_ccdf->add_option("--grid-lo", grid_lo, "grid start [dB]");
  c_ccdf->add_option("--grid-hi", grid_hi, "grid end [dB]");
  c_ccdf->add_option("--grid-step", grid_step, "grid step [dB]");
  c_ccdf->add_option("--out", out_path, "write CSV here (default: stdout)");

  auto* c_gain = app.add_subcommand("gain", "horizontal gap vs a reference");
  gain_flags.attach(c_gain, true);
  c_gain->add_option("--reference", reference,
                     "reference config file or analytic:<name>");
  c_gain->add_option("--p", p_list, "success probabilities to evaluate")
      ->delimiter(',');
  c_gain->add_option("--moment", moment, "moment order for asymptotic gain");
  c_gain->add_option("--grid-lo", grid_lo, "grid start [dB]");
  c_gain->add_option("--grid-hi", grid_hi, "grid end [dB]");
  c_gain->add_option("--grid-step", grid_step, "grid step [dB]");
  c_gain->add_option("--out", out_path, "write JSON summary here");

  auto* c_div = app.add_subcommand("diversity", "small-theta outage slope");
  div_flags.attach(c_div, false);
  double div_lo = -40.0, div_hi = 10.0, div_step = 0.25;
  c_div->add_option("--grid-lo", div_lo, "grid start [dB]");
  c_div->add_option("--grid-hi", div_hi, "grid end [dB]");
  c_div->add_option("--grid-step", div_step, "grid step [dB]");
  c_div->add_option("--out", out_path, "write JSON summary here");

  auto* c_val = app.add_subcommand("validate", "run the acceptance criteria");
  c_val->add_flag("--fast", fast, "subsample (< 60 s) with widened tolerances");
  c_val->add_option("--out", out_path, "write machine-readable report here");

  CLI11_PARSE(app, argc, argv);

  try {
    misr::kernels::select(kernel);
    if (c_misr->parsed()) return cmd_misr(misr_flags, moment, out_path);
    if (c_ccdf->parsed())
      return cmd_ccdf(ccdf_flags, analytic_name, grid_lo, grid_hi, grid_step,
                      out_path);
    if (c_gain->parsed())
      return cmd_gain(gain_flags, reference, p_list, moment, grid_lo, grid_hi,
                      grid_step, out_path);
    if (c_div->parsed())
      return cmd_diversity(div_flags, div_lo, div_hi, div_step, out_path);
    if (c_val->parsed()) return cmd_validate(fast, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
