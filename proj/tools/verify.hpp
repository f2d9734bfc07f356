#ifndef CFKIT_TOOLS_VERIFY_HPP
#define CFKIT_TOOLS_VERIFY_HPP

#include <ostream>
#include <string>
#include <vector>

namespace cfkit::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Each suite exercises the documented invariants of one slice of the
// library; `report` receives human-readable tables where a trend (not a
// single number) is the claim being checked.
std::vector<CheckResult> suite_ops(std::ostream& report);
std::vector<CheckResult> suite_catalog(std::ostream& report);
std::vector<CheckResult> suite_solver(std::ostream& report);
std::vector<CheckResult> suite_limits(std::ostream& report);

}  // namespace cfkit::verify

#endif
