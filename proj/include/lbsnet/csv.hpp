#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>

namespace lbsnet {

/// Shortest round-trippable text for a double; "nan" for undefined values.
inline std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

/// Inverse of format_real; returns false on malformed text.
inline bool parse_real(std::string_view text, double& out) {
  if (text == "nan" || text == "NaN" || text.empty()) {
    out = std::nan("");
    return true;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace lbsnet
