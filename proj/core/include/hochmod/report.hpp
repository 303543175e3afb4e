#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace hochmod {

/// One failed instance of a checked identity.
struct Violation {
  std::string check;
  std::vector<std::size_t> basis;  // offending basis tuple
  std::string lhs;
  std::string rhs;
};

/// Outcome of a verifier. Violations are data, not errors.
struct Report {
  std::string name;
  std::vector<Violation> violations;
  std::size_t total_violations = 0;
  std::size_t checks = 0;
  std::vector<std::string> notes;

  static constexpr std::size_t kMaxStored = 32;

  bool ok() const { return total_violations == 0; }

  void pass() { ++checks; }

  void fail(std::string check, std::vector<std::size_t> basis, std::string lhs = {}, std::string rhs = {}) {
    ++checks;
    ++total_violations;
    if (violations.size() < kMaxStored)
      violations.push_back({std::move(check), std::move(basis), std::move(lhs), std::move(rhs)});
  }

  void expect(bool holds, std::string check, std::vector<std::size_t> basis = {}, std::string lhs = {},
              std::string rhs = {}) {
    if (holds) pass();
    else fail(std::move(check), std::move(basis), std::move(lhs), std::move(rhs));
  }

  void merge(const Report& other) {
    checks += other.checks;
    total_violations += other.total_violations;
    for (const auto& v : other.violations)
      if (violations.size() < kMaxStored) violations.push_back(v);
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
  }

  /// Human-readable one-line summary followed by stored violations.
  std::string summary() const;
};

}  // namespace hochmod
