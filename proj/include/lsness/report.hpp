#pragma once

#include <string>
#include <vector>

namespace lsness {

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;   // worst numeric residual, 0 for exact checks
  std::string detail;      // first failure location, if any
};

struct CheckReport {
  std::vector<CheckResult> results;

  void add(std::string name, bool passed, double residual = 0.0,
           std::string detail = {}) {
    results.push_back({std::move(name), passed, residual, std::move(detail)});
  }
  bool all_passed() const {
    for (const auto& r : results)
      if (!r.passed) return false;
    return true;
  }
};

}  // namespace lsness
