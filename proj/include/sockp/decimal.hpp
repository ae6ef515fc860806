#ifndef SOCKP_DECIMAL_HPP
#define SOCKP_DECIMAL_HPP

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sockp/detail/int128.hpp"

namespace sockp {

/// A finite decimal `units * 10^-scale`, kept in normalized form (no trailing
/// zeros in the fractional part) so that equal values compare equal
/// structurally.
class Decimal {
 public:
  static constexpr int kMaxScale = 18;

  constexpr Decimal() = default;

  Decimal(std::int64_t units, int scale) : units_(units), scale_(scale) {
    if (scale < 0 || scale > kMaxScale) {
      throw std::invalid_argument("Decimal: scale out of range");
    }
    normalize();
  }

  static Decimal from_integer(std::int64_t v) { return Decimal(v, 0); }

  // Accepts `[-]digits[.digits]`.
  static Decimal parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("Decimal: empty string");
    std::size_t pos = 0;
    bool negative = false;
    if (text[0] == '-' || text[0] == '+') {
      negative = text[0] == '-';
      pos = 1;
    }
    i128 units = 0;
    int scale = 0;
    bool seen_point = false;
    bool seen_digit = false;
    for (; pos < text.size(); ++pos) {
      char c = text[pos];
      if (c == '.') {
        if (seen_point) throw std::invalid_argument("Decimal: repeated '.' in '" + std::string(text) + "'");
        seen_point = true;
        continue;
      }
      if (c < '0' || c > '9') {
        throw std::invalid_argument("Decimal: invalid character in '" + std::string(text) + "'");
      }
      seen_digit = true;
      units = units * 10 + (c - '0');
      if (seen_point) ++scale;
      if (units > std::numeric_limits<std::int64_t>::max() || scale > kMaxScale) {
        throw std::invalid_argument("Decimal: too many digits in '" + std::string(text) + "'");
      }
    }
    if (!seen_digit) throw std::invalid_argument("Decimal: no digits in '" + std::string(text) + "'");
    return Decimal(static_cast<std::int64_t>(negative ? -units : units), scale);
  }

  // Round-half-even of `value` to `digits` fractional digits.
  static Decimal round_half_even(double value, int digits) {
    double scaled = value * std::pow(10.0, digits);
    if (!std::isfinite(scaled) || std::fabs(scaled) > 9.0e18) {
      throw std::overflow_error("Decimal: value out of range");
    }
    // nearbyint honours the default FE_TONEAREST mode (ties to even).
    return Decimal(static_cast<std::int64_t>(std::nearbyint(scaled)), digits);
  }

  // Truncation toward zero to `digits` fractional digits.
  static Decimal truncate(double value, int digits) {
    double scaled = value * std::pow(10.0, digits);
    if (!std::isfinite(scaled) || std::fabs(scaled) > 9.0e18) {
      throw std::overflow_error("Decimal: value out of range");
    }
    return Decimal(static_cast<std::int64_t>(std::trunc(scaled)), digits);
  }

  std::int64_t units() const { return units_; }
  int scale() const { return scale_; }
  bool is_negative() const { return units_ < 0; }

  double to_double() const {
    return static_cast<double>(static_cast<long double>(units_) / std::pow(10.0L, scale_));
  }
  long double to_long_double() const {
    return static_cast<long double>(units_) / std::pow(10.0L, scale_);
  }

  // Integer value of `*this * 10^target_scale`; target_scale must be >= scale().
  i128 scaled_to(int target_scale) const {
    if (target_scale < scale_) {
      throw std::invalid_argument("Decimal: cannot rescale to a coarser scale");
    }
    return detail::checked_mul(units_, detail::pow10(target_scale - scale_));
  }

  std::string to_string() const {
    std::string digits = detail::to_string(units_ < 0 ? -static_cast<i128>(units_)
                                                       : static_cast<i128>(units_));
    if (scale_ == 0) return (units_ < 0 ? "-" : "") + digits;
    if (static_cast<int>(digits.size()) <= scale_) {
      digits.insert(0, static_cast<std::size_t>(scale_ - static_cast<int>(digits.size()) + 1), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(scale_), ".");
    return (units_ < 0 ? "-" : "") + digits;
  }

  friend Decimal operator*(const Decimal& a, const Decimal& b) {
    int scale = a.scale_ + b.scale_;
    i128 units = detail::checked_mul(a.units_, b.units_);
    while (scale > kMaxScale) {
      if (units % 10 != 0) throw std::overflow_error("Decimal: product exceeds maximum scale");
      units /= 10;
      --scale;
    }
    while (scale > 0 && units % 10 == 0) {
      units /= 10;
      --scale;
    }
    return Decimal(detail::narrow_i64(units), scale);
  }

  friend Decimal operator-(const Decimal& a, const Decimal& b) {
    int scale = std::max(a.scale_, b.scale_);
    return Decimal(detail::narrow_i64(detail::checked_sub(a.scaled_to(scale), b.scaled_to(scale))), scale);
  }

  friend Decimal operator+(const Decimal& a, const Decimal& b) {
    int scale = std::max(a.scale_, b.scale_);
    return Decimal(detail::narrow_i64(detail::checked_add(a.scaled_to(scale), b.scaled_to(scale))), scale);
  }

  friend bool operator==(const Decimal& a, const Decimal& b) {
    return a.units_ == b.units_ && a.scale_ == b.scale_;
  }

  friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
    int scale = std::max(a.scale_, b.scale_);
    i128 x = a.scaled_to(scale);
    i128 y = b.scaled_to(scale);
    if (x < y) return std::strong_ordering::less;
    if (x > y) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  void normalize() {
    while (scale_ > 0 && units_ % 10 == 0) {
      units_ /= 10;
      --scale_;
    }
  }

  std::int64_t units_ = 0;
  int scale_ = 0;
};

}  // namespace sockp

#endif  // SOCKP_DECIMAL_HPP
