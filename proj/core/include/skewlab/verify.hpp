#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace skewlab {

struct PropertyResult {
  std::string family;
  bool passed = false;
  int cases = 0;
  std::string detail;               // failure description, empty on success
  std::string counterexample_path;  // JSON dump location when failing
  double seconds = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int count = 500;  // base case budget; families scale it as documented
  std::vector<int> dims = {2, 3, 4};
  int n_min = 2;  // element / channel counts sampled in [n_min, n_max]
  int n_max = 4;
  std::string out_dir = ".";
  // Deliberately corrupts one comparison so the failure reporting path can
  // be exercised end to end.
  bool inject_failure = false;
  // Run only the family with this exact name (empty = all).
  std::string only;
};

// Seeded property checks over every public computation path. Each family
// runs independently; a failing family writes the offending inputs to
// out_dir as JSON and reports where.
std::vector<PropertyResult> run_verification(const VerifyOptions& options);

bool all_passed(const std::vector<PropertyResult>& results);

}  // namespace skewlab
