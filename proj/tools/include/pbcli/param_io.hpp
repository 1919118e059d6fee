#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pbcli {

/// Bad flags, unparsable input or invalid parameters; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "0.1,0.2, 0.3" -> {0.1, 0.2, 0.3}.
std::vector<double> parse_param_list(std::string_view text);

/// One probability per line; blank lines and `#` comments are ignored.
std::vector<double> read_param_file(const std::filesystem::path& path);
std::vector<double> parse_param_text(std::string_view text);

/// Shortest form that round-trips, comma separated, so output can be pasted
/// back into `-p`.
std::string format_param_list(std::span<const double> values);

/// Round-trippable text for one double ("inf"/"-inf"/"nan" for non-finite).
std::string format_double(double value);

}  // namespace pbcli
