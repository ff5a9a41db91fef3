#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>

namespace lbsnet {

/// Exact count ratio; Undefined when the denominator is zero. Kept as a pair
/// of counts so fixtures can be compared without rounding.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 0;

  bool defined() const { return den != 0; }
  std::optional<double> value() const {
    if (!defined()) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
  }
  /// Reduced "n/d", or "undefined".
  std::string to_string() const {
    if (!defined()) return "undefined";
    const auto g = std::gcd(num, den);
    return std::to_string(num / g) + "/" + std::to_string(den / g);
  }

  /// Equal as rationals; Undefined equals only Undefined.
  friend bool operator==(const Ratio& a, const Ratio& b) {
    if (!a.defined() || !b.defined()) return a.defined() == b.defined();
    return static_cast<unsigned __int128>(a.num) * b.den == static_cast<unsigned __int128>(b.num) * a.den;
  }
};

}  // namespace lbsnet
