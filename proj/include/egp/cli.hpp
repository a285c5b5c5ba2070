#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace egp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (program name excluded). Never throws;
/// returns 0 on success, 1 when a verification fails and 2 on usage or
/// domain errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace egp
