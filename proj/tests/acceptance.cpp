// Acceptance suite: runs every verification suite at its pinned parameters
// and tolerances and prints one pass/fail line per criterion.

#include <cstdio>
#include <string>

#include "padicdyn/verify.hpp"

int main() {
  using padicdyn::VerdictReport;
  using padicdyn::VerifyOptions;

  struct Criterion {
    int number;
    const char* suite;
    const char* description;
    double limit_seconds;
  };
  // Sample counts and tolerances are pinned inside each suite; the wall-time
  // limits are part of the criteria.
  const Criterion criteria[] = {
      {1, "classification", "regime table + 20 randomized vs residue oracle", 1.0},
      {2, "scaling", "scaling isometry, 1000 pairs per branch disk, p=3,5", 5.0},
      {3, "fullshift", "256 depth-8 cylinders: disjoint, radius law, words", 10.0},
      {4, "sft", "10^4 orbits x 50 steps: transitions within A", 30.0},
      {5, "entropy", "spectral radius 1.69562 (1e-4), cubic root (1e-8)", 1.0},
      {6, "goodred", "reduce o phi = induced o reduce, p=3,5,7, k<=5", 20.0},
      {7, "sphereswap", "sphere swap + 1-Lipschitz phi^2 at (3,9)", 5.0},
      {8, "escape", "monotone escape at (3,1/3): v drops by 1 per step", 1.0},
      {9, "taylor", "coefficient bounds |alpha_i| <= (p/|x0|)^(i-1)", 10.0},
      {10, "decomposition", "partition, divisibility, landing at desk scale", 60.0},
  };

  VerifyOptions options;  // defaults = the pinned counts
  int failed = 0;
  for (const Criterion& crit : criteria) {
    VerdictReport report;
    std::string note;
    try {
      report = run_suite(crit.suite, options);
    } catch (const std::exception& e) {
      report.suite = crit.suite;
      report.failures = -1;
      note = e.what();
    }
    double seconds = report.wall_ms / 1000.0;
    bool ok = report.failures == 0 && seconds <= crit.limit_seconds;
    if (!ok) ++failed;
    std::printf("[%2d] %-15s %s  %6ld cases  %6.2fs (limit %.0fs)  %s\n",
                crit.number, crit.suite, ok ? "PASS" : "FAIL", report.cases,
                seconds, crit.limit_seconds, crit.description);
    if (!note.empty()) std::printf("     error: %s\n", note.c_str());
    for (const std::string& witness : report.witnesses) {
      std::printf("     witness: %s\n", witness.c_str());
    }
  }
  std::printf("%s: %d/10 criteria passed\n", failed == 0 ? "ACCEPTED" : "REJECTED",
              10 - failed);
  return failed == 0 ? 0 : 1;
}
