#pragma once

// Batch verification of the library identities on seeded random and
// closed-form instances.

#include <cstdint>
#include <string>
#include <vector>

namespace netpair {

struct CheckResult {
  std::string id;      ///< sort key, e.g. "c05.friedrichs_identity"
  std::string suite;   ///< network, kernel, operators or measures
  std::string anchor;  ///< the identity being checked
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::string suite = "all";
  std::uint64_t seed = 42;
};

std::vector<std::string> verify_suites();

/// Runs every check of the selected suite; results are sorted by id.
/// Throws InputError for an unknown suite name.
std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

}  // namespace netpair
