#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

namespace spanforge {

/// Outcome of one named property check, with a witness on failure.
struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct Report {
  std::vector<Check> checks;

  void add(std::string name, bool passed, std::string detail = {}) {
    checks.push_back(Check{std::move(name), passed, std::move(detail)});
  }

  void append(const Report& other, const std::string& prefix = {}) {
    for (const auto& c : other.checks) checks.push_back(Check{prefix + c.name, c.passed, c.detail});
  }

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }

  const Check* first_failure() const {
    for (const auto& c : checks) {
      if (!c.passed) return &c;
    }
    return nullptr;
  }

  const Check* find(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

inline std::ostream& operator<<(std::ostream& out, const Report& r) {
  for (const auto& c : r.checks) {
    out << (c.passed ? "pass " : "FAIL ") << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << '\n';
  }
  return out;
}

}  // namespace spanforge
