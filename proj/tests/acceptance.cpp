// SPDX-License-Identifier: Apache-2.0
//
// Acceptance gate: runs every validation criterion at full size and stated
// tolerance. Pass --fast for the subsampled variant.

#include <cstring>
#include <iostream>

#include "misr/validate.hpp"

#ifndef MISRTOOL_PATH
#define MISRTOOL_PATH ""
#endif

int main(int argc, char** argv) {
  misr::validate::Options opt;
  opt.tool_path = MISRTOOL_PATH;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--fast") == 0) opt.fast = true;
  const auto results = misr::validate::run_all(opt);
  const int failures = misr::validate::print_report(results, std::cout);
  return failures == 0 ? 0 : 1;
}
