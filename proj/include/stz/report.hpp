#pragma once

// Shared status vocabulary for verification reports. AXIOM-DEPENDENT is a
// first-class outcome: a check that rests on a cited classical theorem is
// reported as conditional, never silently folded into PASS.

#include <stdexcept>
#include <string>
#include <vector>

namespace stz {

enum class CheckStatus { PASS, FAIL, AXIOM_DEPENDENT, INCONCLUSIVE };

inline std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::PASS: return "PASS";
    case CheckStatus::FAIL: return "FAIL";
    case CheckStatus::AXIOM_DEPENDENT: return "AXIOM-DEPENDENT";
    case CheckStatus::INCONCLUSIVE: return "INCONCLUSIVE";
  }
  throw std::logic_error("unknown CheckStatus");
}

inline CheckStatus status_from_string(const std::string& s) {
  if (s == "PASS") return CheckStatus::PASS;
  if (s == "FAIL") return CheckStatus::FAIL;
  if (s == "AXIOM-DEPENDENT") return CheckStatus::AXIOM_DEPENDENT;
  if (s == "INCONCLUSIVE") return CheckStatus::INCONCLUSIVE;
  throw std::invalid_argument("unknown status string: " + s);
}

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::FAIL;
  std::string detail;         // human-readable explanation
  double seconds = 0.0;       // wall time, filled by suite runners

  bool operator==(const CheckResult&) const = default;
};

struct SuiteReport {
  std::string suite;
  unsigned long seed = 0;  // RNG seed behind any randomized checks
  std::vector<CheckResult> checks;

  bool all_ok() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::FAIL) return false;
    return true;
  }
  bool any_inconclusive() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::INCONCLUSIVE) return true;
    return false;
  }

  bool operator==(const SuiteReport&) const = default;
};

}  // namespace stz
