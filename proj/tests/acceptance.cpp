// One line per acceptance criterion; exit status 0 iff all pass.
#include "nlwave/acceptance.hpp"

#include <cstdio>

int main() {
  const auto results = nlwave::acceptance::run_all();
  int failed = 0;
  for (const auto& r : results) {
    std::printf("criterion %2d %s: %s [%s]\n", r.id, r.passed ? "PASS" : "FAIL", r.title.c_str(), r.detail.c_str());
    failed += !r.passed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
  return failed == 0 ? 0 : 1;
}
