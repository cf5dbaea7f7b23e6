// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace misr::validate {

struct CriterionResult {
  std::string id;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::vector<std::string> details;
};

struct Options {
  bool fast = false;        // subsample and widen statistical tolerances
  std::string tool_path;    // CLI binary, needed by the reproducibility check
};

std::vector<CriterionResult> run_all(const Options& opt);

// One line per criterion (plus indented details); returns the failure count.
int print_report(const std::vector<CriterionResult>& results, std::ostream& os);

std::string report_json(const std::vector<CriterionResult>& results);

}  // namespace misr::validate
