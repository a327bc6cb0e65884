#pragma once

#include <string>
#include <vector>

#include "fpsearch/kernels.hpp"

namespace fpsearch {

struct SuiteResult {
  int criterion = 0;  // 1..12 for the acceptance suites, 0 for extra invariants
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  bool full = false;  // quick mode uses coarser grids, full mode the complete ones
  Backend backend = default_backend();
};

std::vector<SuiteResult> run_verification(const VerifyOptions& opt);

bool all_pass(const std::vector<SuiteResult>& results);

}  // namespace fpsearch
