#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace mtower {

/// One named verification check with its worst residual.
struct Check {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

struct Report {
  std::string title;
  std::vector<Check> checks;

  Check& add(const std::string& name, double residual, double tolerance, std::string note = {}) {
    checks.push_back({name, residual, tolerance, residual <= tolerance, std::move(note)});
    return checks.back();
  }
  Check& add_flag(const std::string& name, bool ok, std::string note = {}) {
    checks.push_back({name, ok ? 0.0 : 1.0, 0.0, ok, std::move(note)});
    return checks.back();
  }
  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
  double max_residual() const {
    double m = 0.0;
    for (const auto& c : checks) m = std::max(m, c.max_residual);
    return m;
  }
  const Check* first_failure() const {
    for (const auto& c : checks)
      if (!c.pass) return &c;
    return nullptr;
  }
  void merge(const Report& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
};

}  // namespace mtower
