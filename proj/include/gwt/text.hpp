#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace gwt {

/// Shortest text that parses back to the same double.
std::string format_double(double v);

/// Whole-string parse; empty on any trailing garbage.
std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_integer(std::string_view s);

}  // namespace gwt
