#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ravkit::cli {

/// Exit codes: 0 success, 1 input or usage error, 2 domain error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitDomain = 2;

/// Runs one command. `args` excludes the program name. Results go to `out`,
/// every diagnostic goes to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ravkit::cli
