#pragma once

#include <string>
#include <vector>

#include "lpmoment/montecarlo.hpp"
#include "lpmoment/series.hpp"

namespace lpmoment {

struct CheckOutcome {
  std::string suite;
  std::string name;
  bool passed;
  std::string detail;
};

struct VerifyOptions {
  TruncationPolicy policy;
  MCConfig mc;
};

/// routes, endpoints, monotonicity, ineq3, remark-limit, corollaries, mc, all
const std::vector<std::string>& suite_names();

/// Runs one named suite (or all). Throws std::invalid_argument for an unknown
/// name.
std::vector<CheckOutcome> run_suite(const std::string& suite,
                                    const VerifyOptions& options);

}  // namespace lpmoment
