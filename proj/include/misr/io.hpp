// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "misr/distribution.hpp"
#include "misr/simkernel.hpp"

namespace misr::io {

// Flat key = value config with one section per scenario. Unknown sections,
// unknown keys, and duplicate keys are hard errors with file:line context.
struct ConfigFile {
  simkernel::Scenario scenario;
  std::optional<simkernel::Scenario> reference;
};

ConfigFile parse_config_text(std::string_view text, std::string_view name);
ConfigFile load_config(const std::string& path);

// Apply one scenario key ("alpha", "scheme", ...) to a scenario; used by the
// config parser and by CLI flag overrides so both speak the same schema.
void set_scenario_field(simkernel::Scenario& s, std::string_view key,
                        std::string_view value, const std::string& context);

// All numbers in user-facing artifacts carry 9 significant digits.
std::string format_sig9(double v);
double round_sig9(double v);

// CSV schema: header `theta_db,theta_linear,ccdf,stderr` preceded by a
// `# n_samples=N` comment. Reading an emitted file reproduces the
// EmpiricalCcdf exactly (probabilities are reconstructed as counts / n).
void write_ccdf_csv(const distribution::EmpiricalCcdf& ccdf, std::ostream& os);
std::string ccdf_csv_string(const distribution::EmpiricalCcdf& ccdf);
distribution::EmpiricalCcdf read_ccdf_csv(std::istream& is);
distribution::EmpiricalCcdf load_ccdf_csv(const std::string& path);

std::string misr_estimate_json(const simkernel::Scenario& s,
                               const simkernel::MisrEstimate& e, double m);

}  // namespace misr::io
