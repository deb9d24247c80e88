#pragma once

#include <algorithm>
#include <complex>
#include <string>
#include <vector>

namespace premod {

inline constexpr double kDefaultTolerance = 1e-9;

struct CheckResult {
  std::string name;
  bool passed = true;
  double residual = 0.0;  // largest residual seen by the check
  std::string witness;    // first failing instance, empty when passed
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  void append(const ValidationReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
};

/// Outcome of comparing two independently computed sides of an identity.
struct IdentityCheck {
  bool passed = false;
  bool skipped = false;
  std::complex<double> lhs, rhs;
  double residual = 0.0;
  std::string note;
};

}  // namespace premod
