#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace betasplit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitVerifyFailed = 3;

/// Runs one subcommand. args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace betasplit::cli
