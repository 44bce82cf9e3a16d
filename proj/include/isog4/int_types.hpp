#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <limits>
#include <string>
#include <type_traits>

namespace isog4 {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;
using BigInt = boost::multiprecision::cpp_int;

template <class T>
concept BuiltinInt = std::same_as<T, i64> || std::same_as<T, i128>;

template <class T>
concept ExactInt = BuiltinInt<T> || std::same_as<T, BigInt>;

// Wider type used to evaluate cubic expressions without overflow.
template <class T>
struct widen;
template <>
struct widen<i64> {
  using type = i128;
};
template <>
struct widen<i128> {
  using type = BigInt;
};
template <>
struct widen<BigInt> {
  using type = BigInt;
};
template <class T>
using widen_t = typename widen<T>::type;

inline constexpr i128 kI128Max = static_cast<i128>(~u128{0} >> 1);

template <ExactInt T>
T abs_value(const T& x) {
  return x < 0 ? T(-x) : x;
}

inline std::string to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  u128 m = neg ? u128(0) - static_cast<u128>(v) : static_cast<u128>(v);
  std::string s;
  while (m > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(m % 10)));
    m /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

inline std::string to_string(const BigInt& v) { return v.str(); }
inline std::string to_string(i64 v) { return std::to_string(v); }

inline BigInt to_big(i128 v) { return BigInt(v); }
inline BigInt to_big(i64 v) { return BigInt(v); }
inline const BigInt& to_big(const BigInt& v) { return v; }

inline bool fits_i128(const BigInt& v) {
  return v <= BigInt(kI128Max) && v >= -BigInt(kI128Max);
}

inline bool fits_i64(const BigInt& v) {
  return v <= std::numeric_limits<i64>::max() && v >= std::numeric_limits<i64>::min();
}

inline i128 to_i128(const BigInt& v) { return v.convert_to<i128>(); }

template <ExactInt T>
T narrow_to(const BigInt& v) {
  if constexpr (std::same_as<T, BigInt>) {
    return v;
  } else {
    return v.template convert_to<T>();
  }
}

// Number of significant bits of a non-negative value.
inline unsigned bit_length(u128 v) {
  unsigned n = 0;
  while (v != 0) {
    v >>= 1;
    ++n;
  }
  return n;
}

template <ExactInt T>
unsigned bit_length_of(const T& v) {
  if constexpr (std::same_as<T, BigInt>) {
    return v == 0 ? 0u : static_cast<unsigned>(boost::multiprecision::msb(v)) + 1u;
  } else {
    return bit_length(static_cast<u128>(v));
  }
}

template <ExactInt T>
T gcd_of(T a, T b) {
  a = abs_value(a);
  b = abs_value(b);
  while (b != 0) {
    T t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Floor division for signed builtins (C++ division truncates toward zero).
template <BuiltinInt T>
constexpr T floor_div(T a, T b) {
  T q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace isog4
