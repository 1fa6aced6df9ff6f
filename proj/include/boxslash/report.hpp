#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace boxslash {

// Outcome of an exhaustive property check: how many instances were looked
// at and a description of each one that failed.
struct CheckReport {
  std::size_t checked{0};
  std::vector<std::string> violations;

  bool ok() const noexcept { return violations.empty(); }
  void fail(std::string what) { violations.push_back(std::move(what)); }
  void merge(const CheckReport& other) {
    checked += other.checked;
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  }
};

}  // namespace boxslash
