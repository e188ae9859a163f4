#pragma once

// Acceptance harness: every criterion computes its own CSV table and verdict.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lexopt {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;  // one-line summary of what was measured
  std::string csv;     // full table, header first
};

/// Criterion names in run order.
const std::vector<std::string>& criterion_names();

/// Throws InvalidArgument for an unknown name.
CriterionResult run_criterion(const std::string& name, std::uint64_t seed = kDefaultSeed);

struct ReproduceOptions {
  std::uint64_t seed = kDefaultSeed;
  std::vector<std::string> only;        // empty means all
  std::optional<std::string> out_dir;   // one <name>.csv per criterion plus summary.csv
};

std::vector<CriterionResult> reproduce(const ReproduceOptions& options);

/// criterion,pass,detail
std::string summary_csv(const std::vector<CriterionResult>& results);

}  // namespace lexopt
