#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace hyperconvex {

/// One violated check: the inputs that triggered it (as set documents or
/// plain values), the measured residual and the threshold it exceeded.
struct Failure {
  nlohmann::json inputs;
  double residual = 0.0;
  double threshold = 0.0;
  std::string note;
};

/// Result of a randomized property run.
struct Report {
  std::string suite;
  int trials = 0;
  std::vector<Failure> failures;
  /// Trials whose certified intervals straddled a decision threshold.
  int inconclusive = 0;
  std::uint64_t seed = 0;
  std::int64_t runtime_ms = 0;
  double worst_residual = 0.0;
  std::vector<Report> children;

  bool passed() const { return failures.empty(); }

  /// Adds the failures, inconclusive counts and trial counts of `other`.
  void absorb(const Report& other);

  /// 0 when there are no failures and the inconclusive fraction is at most
  /// `max_inconclusive`; 1 when failures exist; 3 otherwise.
  int exit_code(double max_inconclusive = 0.2) const;

  /// JSON form. runtime_ms is the only field that depends on the machine.
  nlohmann::json to_json() const;
};

/// Deterministic 64-bit key for a (seed, suite, trial) substream.
std::uint64_t substream_key(std::uint64_t seed, const std::string& suite, std::uint64_t trial);

}  // namespace hyperconvex
