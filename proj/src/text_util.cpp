#include "circderiv/text_util.hpp"

#include <charconv>
#include <cstdio>

#include "circderiv/error.hpp"

namespace circderiv::detail {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_real(std::string_view s) {
  std::string t = trim(s);
  if (!t.empty() && t.front() == '+') t.erase(t.begin());
  double value = 0.0;
  const auto* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(t.data(), end, value);
  if (t.empty() || ec != std::errc() || ptr != end)
    throw Error(ErrorKind::Parse, "not a number: '" + std::string(s) + "'");
  return value;
}

long long parse_integer(std::string_view s) {
  const std::string t = trim(s);
  long long value = 0;
  const auto* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(t.data(), end, value);
  if (t.empty() || ec != std::errc() || ptr != end)
    throw Error(ErrorKind::Parse, "not an integer: '" + std::string(s) + "'");
  return value;
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace circderiv::detail
