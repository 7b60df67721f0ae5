// Acceptance suite: runs every built-in validation criterion at its pinned
// tolerance and prints one pass/fail line per criterion.

#include <cstdio>

#include "wavebasis/report.hpp"

int main() {
  const auto checks = wavebasis::run_validation_suite();
  int failures = 0;
  for (const auto& c : checks) {
    std::printf("[%s] %s: %s\n", c.pass ? "PASS" : "FAIL", c.id.c_str(), c.detail.c_str());
    if (!c.pass) ++failures;
  }
  std::printf("%zu criteria, %d failed\n", checks.size(), failures);
  return failures == 0 ? 0 : 1;
}
