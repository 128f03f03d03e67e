// Runs every acceptance criterion and prints one line per criterion.
#include <cstdio>

#include "acflab/verification.hpp"

int main() {
  int failures = 0;
  for (const auto& info : acflab::criteria()) {
    const acflab::CriterionResult r = acflab::run_criterion(info.id);
    std::printf("[%s] %2d %-58s tol %-34s %7.1fs  %s\n", r.passed ? "PASS" : "FAIL", r.id,
                r.title.c_str(), r.tolerance.c_str(), r.seconds, r.detail.c_str());
    std::fflush(stdout);
    if (!r.passed) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(acflab::criteria().size()) - failures,
              acflab::criteria().size());
  return failures == 0 ? 0 : 1;
}
