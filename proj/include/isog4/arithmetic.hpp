#pragma once

// Exact integer primitives: Mobius / smallest-prime-factor sieves, squarefree
// counting, integer roots and perfect-square tests.

#include <isog4/error.hpp>
#include <isog4/int_types.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace isog4 {

namespace detail {

// True iff base^n <= bound, for base >= 0, bound >= 0. Never overflows.
template <ExactInt T>
bool pow_at_most(const T& base, unsigned n, const T& bound) {
  if constexpr (std::same_as<T, BigInt>) {
    return boost::multiprecision::pow(base, n) <= bound;
  } else {
    T acc = 1;
    for (unsigned i = 0; i < n; ++i) {
      if (base != 0 && acc > bound / base) return false;
      acc *= base;
    }
    return acc <= bound;
  }
}

}  // namespace detail

/// floor(x^(1/n)) by binary search with exact powering.
template <ExactInt T>
T integer_nth_root(const T& x, unsigned n) {
  if (n == 0) throw Error(ErrorKind::invalid_argument, "integer_nth_root: n must be positive");
  if (x < 0) throw Error(ErrorKind::invalid_argument, "integer_nth_root: x must be non-negative");
  if (n == 1 || x < 2) return x;
  const unsigned bits = bit_length_of(x);
  // 2^((bits-1)/n) <= root < 2^(ceil(bits/n))
  T lo = T(1) << ((bits - 1) / n);
  T hi = T(1) << ((bits + n - 1) / n);
  while (hi - lo > 1) {
    T mid = lo + (hi - lo) / 2;
    if (detail::pow_at_most(mid, n, x)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

template <ExactInt T>
T isqrt(const T& x) {
  return integer_nth_root(x, 2);
}

template <ExactInt T>
T icbrt(const T& x) {
  return integer_nth_root(x, 3);
}

/// Non-negative square root of x when x is a perfect square.
template <ExactInt T>
std::optional<T> is_perfect_square(const T& x) {
  if (x < 0) return std::nullopt;
  // Squares are 0, 1, 4 or 9 mod 16.
  const int r = static_cast<int>(x % 16);
  if (r != 0 && r != 1 && r != 4 && r != 9) return std::nullopt;
  T s = isqrt(x);
  if (s * s == x) return s;
  return std::nullopt;
}

/// Mobius values and smallest prime factors for 1..limit; immutable once built.
class SieveTables {
 public:
  explicit SieveTables(std::uint64_t limit) : limit_(limit) {
    if (limit == 0) throw Error(ErrorKind::invalid_argument, "build_sieves: limit must be >= 1");
    if (limit > 0xFFFFFFFFull) throw Error(ErrorKind::guard, "build_sieves: limit exceeds 2^32-1");
    mobius_.assign(limit + 1, 0);
    spf_.assign(limit + 1, 0);
    mobius_[1] = 1;
    std::vector<std::uint32_t> primes;
    for (std::uint64_t n = 2; n <= limit; ++n) {
      if (spf_[n] == 0) {
        spf_[n] = static_cast<std::uint32_t>(n);
        mobius_[n] = -1;
        primes.push_back(static_cast<std::uint32_t>(n));
      }
      for (std::uint32_t p : primes) {
        const std::uint64_t m = n * p;
        if (p > spf_[n] || m > limit) break;
        spf_[m] = p;
        mobius_[m] = (p == spf_[n]) ? 0 : static_cast<std::int8_t>(-mobius_[n]);
      }
    }
  }

  std::uint64_t limit() const noexcept { return limit_; }

  int mu(std::uint64_t n) const { return mobius_.at(n); }

  /// Smallest prime factor; defined for 2 <= n <= limit.
  std::uint32_t spf(std::uint64_t n) const { return spf_.at(n); }

  std::span<const std::int8_t> mobius() const noexcept { return {mobius_.data() + 1, limit_}; }

  /// Distinct primes p with p^2 | n.
  std::vector<std::uint64_t> square_prime_divisors(std::uint64_t n) const {
    std::vector<std::uint64_t> out;
    while (n > 1) {
      const std::uint64_t p = spf(n);
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      if (e >= 2) out.push_back(p);
    }
    return out;
  }

 private:
  std::uint64_t limit_;
  std::vector<std::int8_t> mobius_;
  std::vector<std::uint32_t> spf_;
};

inline SieveTables build_sieves(std::uint64_t limit) { return SieveTables(limit); }

/// Q(x) = #{n <= x : n squarefree}, via sum_{d <= sqrt x} mu(d) floor(x/d^2).
inline std::uint64_t squarefree_count(std::uint64_t x, const SieveTables& sieve) {
  const std::uint64_t root = integer_nth_root<i64>(static_cast<i64>(x), 2);
  if (root > sieve.limit()) throw Error(ErrorKind::guard, "squarefree_count: sieve too small");
  std::int64_t total = 0;
  for (std::uint64_t d = 1; d <= root; ++d) {
    const int m = sieve.mu(d);
    if (m != 0) total += m * static_cast<std::int64_t>(x / (d * d));
  }
  return static_cast<std::uint64_t>(total);
}

inline std::uint64_t squarefree_count(std::uint64_t x) {
  return squarefree_count(x, SieveTables(std::max<std::uint64_t>(1, integer_nth_root<i64>(static_cast<i64>(x), 2))));
}

/// Q3(x) = #{n <= x : n squarefree, 3 | n} = sum_{j >= 1} (-1)^(j-1) Q(x / 3^j).
inline std::uint64_t squarefree_count_div3(std::uint64_t x, const SieveTables& sieve) {
  std::int64_t total = 0;
  int sign = 1;
  for (std::uint64_t y = x / 3; y > 0; y /= 3) {
    total += sign * static_cast<std::int64_t>(squarefree_count(y, sieve));
    sign = -sign;
  }
  return static_cast<std::uint64_t>(total);
}

inline std::uint64_t squarefree_count_div3(std::uint64_t x) {
  return squarefree_count_div3(x, SieveTables(std::max<std::uint64_t>(1, integer_nth_root<i64>(static_cast<i64>(x), 2))));
}

/// sum_{d <= limit, d odd} mu(d) / d^power; tends to 1/(zeta(power)(1 - 2^-power)).
inline double odd_mobius_sum(const SieveTables& sieve, unsigned power) {
  long double s = 0;
  for (std::uint64_t d = 1; d <= sieve.limit(); d += 2) {
    const int m = sieve.mu(d);
    if (m != 0) s += m / std::pow(static_cast<long double>(d), static_cast<long double>(power));
  }
  return static_cast<double>(s);
}

/// Height bound X with the exact coefficient thresholds it induces.
///
/// 4|A|^3 <= X  <=>  |A| <= floor((X/4)^(1/3)) = a_limit
/// 27 B^2 <= X  <=>  |B| <= floor((X/27)^(1/2)) = b_limit
/// Both use integer roots of floor(X/4), floor(X/27), so no real thresholds
/// are ever formed.
class HeightBound {
 public:
  explicit HeightBound(BigInt x) : x_(std::move(x)) {
    if (x_ < 1) throw Error(ErrorKind::invalid_argument, "height bound must be >= 1");
    a_limit_ = icbrt(BigInt(x_ / 4));
    b_limit_ = isqrt(BigInt(x_ / 27));
  }
  explicit HeightBound(i64 x) : HeightBound(BigInt(x)) {}

  const BigInt& value() const noexcept { return x_; }
  const BigInt& a_limit() const noexcept { return a_limit_; }
  const BigInt& b_limit() const noexcept { return b_limit_; }

  i128 a_limit_i128() const {
    if (!fits_i128(a_limit_)) throw Error(ErrorKind::guard, "height bound too large for 128-bit thresholds");
    return to_i128(a_limit_);
  }
  i128 b_limit_i128() const {
    if (!fits_i128(b_limit_)) throw Error(ErrorKind::guard, "height bound too large for 128-bit thresholds");
    return to_i128(b_limit_);
  }

  /// Direct test of 4|A|^3 <= X and 27 B^2 <= X.
  template <ExactInt T>
  bool admits(const T& a_coeff, const T& b_coeff) const {
    const BigInt a = abs_value(to_big(a_coeff));
    const BigInt b = to_big(b_coeff);
    return 4 * a * a * a <= x_ && 27 * b * b <= x_;
  }

 private:
  BigInt x_;
  BigInt a_limit_;
  BigInt b_limit_;
};

}  // namespace isog4
