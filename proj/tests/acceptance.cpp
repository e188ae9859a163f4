// Runs the acceptance criteria (all, or those named on the command line) and
// prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "lexopt/reproduce.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> names(argv + 1, argv + argc);
  if (names.empty()) names = lexopt::criterion_names();
  int failures = 0;
  for (const auto& name : names) {
    const auto start = std::chrono::steady_clock::now();
    const auto r = lexopt::run_criterion(name);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %-19s %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !r.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(names.size()) - failures,
              names.size());
  return failures == 0 ? 0 : 1;
}
