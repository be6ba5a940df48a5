#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace midfix {

/// Outcome of one named verification. `witness` is empty when it passed,
/// otherwise it names the first counterexample found.
struct Check {
  std::string name;
  bool passed = true;
  std::string witness;
  std::string note;
};

inline bool all_passed(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

inline std::size_t failed_count(const std::vector<Check>& checks) {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.passed; }));
}

}  // namespace midfix
