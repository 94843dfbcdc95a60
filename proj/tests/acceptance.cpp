// Acceptance suite: runs every bundled verification criterion and prints one
// pass/fail line per criterion. Exit status is nonzero when any fails.
#include <cstdio>

#include "catlab/verify.hpp"

int main() {
  auto results = catlab::run_acceptance(false);
  bool all = true;
  for (const auto& r : results) {
    std::printf("criterion %2d [%s] %s — %s (%lld ms)\n", r.id, r.pass ? "PASS" : "FAIL",
                r.name.c_str(), r.details.c_str(), r.elapsed_ms);
    all = all && r.pass;
  }
  std::printf("%s\n", all ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL");
  return all ? 0 : 1;
}
