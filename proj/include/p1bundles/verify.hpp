#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace p1b {

struct CheckResult {
  int number = 0;
  std::string id;
  std::string title;
  bool passed = false;
  std::string detail;  // failure explanations / computed-vs-expected values
  long millis = 0;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::string filter;  // run only checks whose id contains this substring
};

// The full verification suite: ten numbered checks, each printing one
// pass/fail line through the callers (CLI verify-paper, acceptance runner).
std::vector<CheckResult> run_verification(const VerifyOptions& options);

}  // namespace p1b
