#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gqsl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitComputation = 3;

/// Entry point of the qsl tool; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gqsl::cli
