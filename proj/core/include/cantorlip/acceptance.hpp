#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cantorlip {

struct AcceptanceOptions {
  /// Caps the level sweeps; 8 runs every criterion at full size.
  unsigned max_n = 8;
  std::uint64_t seed = 1;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the thirteen acceptance criteria in order. A criterion that throws is
/// reported as failed with the exception text as its detail.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

}  // namespace cantorlip
