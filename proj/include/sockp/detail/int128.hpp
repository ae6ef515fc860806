#ifndef SOCKP_DETAIL_INT128_HPP
#define SOCKP_DETAIL_INT128_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace sockp {

using i128 = __int128;

namespace detail {

inline i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw std::overflow_error("sockp: 128-bit multiplication overflow");
  }
  return r;
}

inline i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw std::overflow_error("sockp: 128-bit addition overflow");
  }
  return r;
}

inline i128 checked_sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) {
    throw std::overflow_error("sockp: 128-bit subtraction overflow");
  }
  return r;
}

inline i128 pow10(int e) {
  if (e < 0 || e > 38) throw std::out_of_range("sockp: power of ten out of range");
  i128 r = 1;
  for (int i = 0; i < e; ++i) r *= 10;
  return r;
}

// Division rounding toward -inf / +inf. The divisor must be positive.
inline i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

inline i128 ceil_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && (a > 0)) ++q;
  return q;
}

inline i128 gcd(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::int64_t narrow_i64(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("sockp: value does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

inline std::string to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v)
                            : static_cast<unsigned __int128>(v);
  std::string s;
  while (u != 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.insert(s.begin(), '-');
  return s;
}

}  // namespace detail
}  // namespace sockp

#endif  // SOCKP_DETAIL_INT128_HPP
