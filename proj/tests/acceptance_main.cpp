// Acceptance suite: runs every verification check at its pinned tolerance
// and prints one pass/fail line per criterion. Exit status is nonzero when
// any criterion fails.
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "p1bundles/verify.hpp"

int main(int argc, char** argv) {
  p1b::VerifyOptions opts;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
      opts.seed = std::strtoull(argv[++i], nullptr, 10);
    else if (std::strcmp(argv[i], "--filter") == 0 && i + 1 < argc)
      opts.filter = argv[++i];
  }
  auto results = p1b::run_verification(opts);
  bool all = true;
  for (const auto& r : results) {
    std::printf("[%s] %2d %-42s (%6ld ms)%s%s\n", r.passed ? "PASS" : "FAIL",
                r.number, r.id.c_str(), r.millis,
                r.detail.empty() ? "" : " -- ", r.detail.c_str());
    if (!r.passed) all = false;
  }
  std::printf("%s\n", all ? "acceptance: all criteria passed"
                          : "acceptance: SOME CRITERIA FAILED");
  return all ? 0 : 1;
}
