#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fsparse {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int usage = 2;
inline constexpr int violation = 3;
inline constexpr int precondition = 4;
}  // namespace exit_code

/// Entry point of the fsparse tool; args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fsparse
