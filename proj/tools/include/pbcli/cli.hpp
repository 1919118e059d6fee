#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pbcli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitVerdictFailure = 1;
inline constexpr int kExitUsage = 2;

/// Full `pb` command line; argv[0] is the program name. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct GridSpec {
  double lo = 1e-4;
  double hi = 1.0;
  std::size_t count = 101;
};

/// "min:max:count".
GridSpec parse_grid(const std::string& text);

}  // namespace pbcli
