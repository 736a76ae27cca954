#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cantorlip::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

/// Runs one invocation. `args` excludes the program name. Exactly one
/// document (JSON, CSV or help text) is written to `out`.
int run(const std::vector<std::string>& args, std::ostream& out);

}  // namespace cantorlip::cli
