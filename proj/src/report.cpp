#include "hyperconvex/report.hpp"

#include <algorithm>

namespace hyperconvex {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

void Report::absorb(const Report& other) {
  trials += other.trials;
  inconclusive += other.inconclusive;
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  worst_residual = std::max(worst_residual, other.worst_residual);
}

int Report::exit_code(double max_inconclusive) const {
  if (!failures.empty()) return 1;
  if (trials > 0 && static_cast<double>(inconclusive) > max_inconclusive * trials) return 3;
  for (const Report& child : children) {
    const int code = child.exit_code(max_inconclusive);
    if (code != 0) return code;
  }
  return 0;
}

nlohmann::json Report::to_json() const {
  nlohmann::json failures_json = nlohmann::json::array();
  for (const Failure& f : failures) {
    failures_json.push_back(
        {{"inputs", f.inputs}, {"residual", f.residual}, {"threshold", f.threshold}, {"note", f.note}});
  }
  nlohmann::json out = {
      {"suite", suite},
      {"trials", trials},
      {"failures", failures_json},
      {"inconclusive", inconclusive},
      {"seed", seed},
      {"runtime_ms", runtime_ms},
      {"worst_residual", worst_residual},
      {"passed", passed()},
  };
  if (!children.empty()) {
    nlohmann::json kids = nlohmann::json::array();
    for (const Report& child : children) kids.push_back(child.to_json());
    out["children"] = kids;
  }
  return out;
}

std::uint64_t substream_key(std::uint64_t seed, const std::string& suite, std::uint64_t trial) {
  std::uint64_t h = splitmix64(seed);
  for (unsigned char c : suite) h = splitmix64(h ^ c);
  return splitmix64(h ^ splitmix64(trial));
}

}  // namespace hyperconvex
