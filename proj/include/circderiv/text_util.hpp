#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace circderiv::detail {

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

/// Strict decimal parse; trailing garbage is a Parse error.
double parse_real(std::string_view s);
long long parse_integer(std::string_view s);

/// 17 significant digits (%.17g), which round-trips every double.
std::string format_real(double x);

}  // namespace circderiv::detail
