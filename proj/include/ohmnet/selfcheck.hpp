#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ohmnet {

struct SelfcheckResult {
  int checks_run = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// Runs the invariant suite on every graph from load_suite(). With
/// inject_fault set, corrupts one operator entry first to prove the checks
/// catch it. Progress lines go to `log` when given.
SelfcheckResult selfcheck(bool inject_fault = false,
                          std::ostream* log = nullptr);

}  // namespace ohmnet
