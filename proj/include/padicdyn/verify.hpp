#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "padicdyn/json_io.hpp"

namespace padicdyn {

/// Outcome of one verification suite. Every suite counts exact-equality
/// checks; failures must be zero and each failure carries a witness.
struct VerdictReport {
  std::string suite;
  long cases = 0;
  long failures = 0;
  std::vector<std::string> witnesses;
  double wall_ms = 0.0;
  Json details;

  bool passed() const { return failures == 0; }
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  int pairs = -1;    // override pair counts where a suite samples pairs
  int samples = -1;  // override point counts
  bool inject_fault = false;  // flips one transition of A (harness self-test)
};

/// Suite names, in acceptance order:
///   classification, scaling, fullshift, sft, entropy, goodred, sphereswap,
///   escape, taylor, decomposition
const std::vector<std::string>& suite_names();

VerdictReport run_suite(const std::string& name, const VerifyOptions& options);

std::vector<VerdictReport> run_all_suites(const VerifyOptions& options);

}  // namespace padicdyn
