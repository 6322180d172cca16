#pragma once

#include "hyperconvex/report.hpp"
#include "hyperconvex/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hyperconvex {

struct SuiteOptions {
  /// Largest ambient dimension; each trial draws its own n from [1, dim]
  /// (aw-origin-equivalence uses exactly dim).
  int dim = 2;
  int trials = 100;
  std::uint64_t seed = 1;
  Tolerances tol;
  /// Adversarial selections per family in the independence suite.
  int selections = 10'000;
  /// Sampled points per instance in the simplex-stability suite.
  int samples = 100;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// Every suite name accepted by run_suite, "all" last.
const std::vector<std::string>& suite_names();

/// Runs one property suite, or every suite as children of "all". Throws
/// PreconditionError for an unknown name or non-positive dim.
Report run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace hyperconvex
