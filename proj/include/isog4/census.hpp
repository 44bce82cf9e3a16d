#pragma once

// Exact counts N1(X) (curves with at least one pair of Galois-stable cyclic
// order-4 subgroups) and N2(X) (two pairs), with naive and full-scan oracles.
//
// N1 counts lattice points (a, b), a >= 0, in
//   R1(X) = { 4|a^2 - 3b^2|^3 <= X, 27|a^2 b - 2b^3|^2 <= X }
// off the singular locus (a = 0 or 2a = 3|b|) with no prime l such that
// l^2 | a and l^2 | b, then subtracts N2(X). A lattice point corresponds to
// the curve A = a^2 - 3b^2, B = 2b^3 - a^2 b with root b.

#include <isog4/arithmetic.hpp>
#include <isog4/curves.hpp>
#include <isog4/error.hpp>
#include <isog4/int_types.hpp>
#include <isog4/parallel.hpp>

#include <array>
#include <chrono>
#include <cstdint>
#include <string_view>
#include <vector>

namespace isog4 {

enum class CensusMethod { naive, fast, full_scan };

inline std::string_view method_name(CensusMethod m) {
  switch (m) {
    case CensusMethod::naive: return "naive";
    case CensusMethod::fast: return "fast";
    case CensusMethod::full_scan: return "full_scan";
  }
  return "?";
}

struct CensusResult {
  BigInt X;
  std::uint64_t n1 = 0;
  std::uint64_t n2 = 0;
  std::uint64_t lattice_count = 0;
  CensusMethod method = CensusMethod::fast;
  double elapsed_ms = 0;
};

struct LatticePoint1 {
  i64 a = 0;
  i64 b = 0;
  bool in_region = false;
  bool singular = false;
  bool square_excluded = false;
};

/// Exact classification of one lattice point (a >= 0).
inline LatticePoint1 r1_membership(const HeightBound& X, i64 a, i64 b) {
  LatticePoint1 p{a, b};
  const BigInt A = BigInt(a) * a - 3 * BigInt(b) * b;
  const BigInt B = BigInt(a) * a * b - 2 * BigInt(b) * b * b;
  const BigInt absA = abs(A);
  p.in_region = 4 * absA * absA * absA <= X.value() && 27 * B * B <= X.value();
  // a^4 (4a^2 - 9b^2) = 0
  p.singular = a == 0 || 4 * BigInt(a) * a == 9 * BigInt(b) * b;
  // l^2 | a and l^2 | b  <=>  gcd(a, b) is not squarefree (gcd(0, 0) = 0)
  const i64 g = gcd_of<i64>(a, b);
  p.square_excluded = g == 0 || !is_squarefree_u64(static_cast<std::uint64_t>(g));
  return p;
}

namespace detail {

inline auto now() { return std::chrono::steady_clock::now(); }

inline double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(now() - t0).count();
}

// Number of multiples of m in [lo, hi], lo >= 0.
inline i128 multiples_in(i128 lo, i128 hi, i128 m) {
  if (lo > hi) return 0;
  return floor_div<i128>(hi, m) - floor_div<i128>(lo - 1, m);
}

// Count of b in [lo, hi] (lo >= 0) not divisible by l^2 for any l in primes.
inline i128 count_unexcluded(i128 lo, i128 hi, const std::vector<std::uint64_t>& primes) {
  if (lo > hi) return 0;
  const std::size_t k = primes.size();
  i128 total = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    i128 m = 1;
    int bits = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (mask & (std::size_t{1} << j)) {
        m *= static_cast<i128>(primes[j]) * static_cast<i128>(primes[j]);
        ++bits;
      }
    }
    const i128 c = multiples_in(lo, hi, m);
    total += (bits % 2 == 0) ? c : -c;
  }
  return total;
}

// Last x in [lo, hi] with pred(x), pred monotone true-then-false; lo - 1 if none.
template <class Pred>
i128 last_true(i128 lo, i128 hi, Pred pred) {
  if (lo > hi || !pred(lo)) return lo - 1;
  while (lo < hi) {
    const i128 mid = lo + (hi - lo + 1) / 2;
    if (pred(mid)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

// First x in [lo, hi] with pred(x), pred monotone false-then-true; hi + 1 if none.
template <class Pred>
i128 first_true(i128 lo, i128 hi, Pred pred) {
  if (lo > hi || !pred(hi)) return hi + 1;
  while (lo < hi) {
    const i128 mid = lo + (hi - lo) / 2;
    if (pred(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

struct Interval {
  i128 lo;
  i128 hi;
};

// Integer thresholds for R1(X): |a^2 - 3b^2| <= ta and |b| |a^2 - 2b^2| <= tb.
struct R1Region {
  i128 ta;
  i128 tb;

  explicit R1Region(const HeightBound& X) : ta(X.a_limit_i128()), tb(X.b_limit_i128()) {}

  bool contains(i128 a, i128 b) const {
    const i128 a2 = a * a;
    const i128 b2 = b * b;
    const i128 u = a2 - 3 * b2;
    const i128 absb = b < 0 ? -b : b;
    const i128 s = a2 - 2 * b2;
    return (u < 0 ? -u : u) <= ta && absb * (s < 0 ? -s : s) <= tb;
  }

  // Largest |b| over the region: |b| <= sqrt(ta) or |b| (b^2 - ta) <= tb.
  i128 b_max() const {
    const i128 base = isqrt(ta);
    const i128 hi = 2 * (base + icbrt(tb) + 1);
    return last_true(base, hi, [&](i128 b) { return b * (b * b - ta) <= tb; });
  }

  i128 a_max() const {
    const i128 bm = b_max();
    return isqrt(3 * bm * bm + ta);
  }

  // The b >= 0 in column a, as up to three disjoint intervals.
  //
  // Along the column, |a^2 - 3b^2| <= ta is one interval [lo1, hi1]. The
  // function h(b) = b |a^2 - 2b^2| rises on [0, m], falls on [m+1, n] and rises
  // on [n+1, oo) over the integers, with m = floor(a/sqrt 6), n = floor(a/sqrt 2).
  std::array<Interval, 3> column(i128 a) const {
    const i128 a2 = a * a;
    const i128 lo1 = a2 <= ta ? 0 : isqrt((a2 - ta + 2) / 3 - 1) + 1;
    const i128 hi1 = isqrt((a2 + ta) / 3);
    const i128 m = isqrt(a2 / 6);
    const i128 n = isqrt(a2 / 2);
    auto h_ok = [&](i128 b) {
      const i128 s = a2 - 2 * b * b;
      return b * (s < 0 ? -s : s) <= tb;
    };
    std::array<Interval, 3> out{};
    {
      const i128 lo = lo1;
      const i128 hi = std::min(m, hi1);
      out[0] = {lo, last_true(lo, hi, h_ok)};
    }
    {
      const i128 lo = std::max(m + 1, lo1);
      const i128 hi = std::min(n, hi1);
      out[1] = {first_true(lo, hi, h_ok), hi};
    }
    {
      const i128 lo = std::max(n + 1, lo1);
      out[2] = {lo, last_true(lo, hi1, h_ok)};
    }
    return out;
  }
};

struct ColumnOptions {
  bool exclude_singular = true;
  bool exclude_squares = true;
};

// Lattice points with this a (all b, both signs) after the requested exclusions.
inline std::uint64_t count_column(const R1Region& region, i128 a, const std::vector<std::uint64_t>& square_primes,
                                  ColumnOptions opt) {
  const auto ivs = region.column(a);
  static const std::vector<std::uint64_t> kNone;
  const auto& primes = opt.exclude_squares ? square_primes : kNone;
  i128 nonneg = 0;
  bool zero_counted = false;
  for (const auto& iv : ivs) {
    if (iv.lo > iv.hi) continue;
    nonneg += count_unexcluded(iv.lo, iv.hi, primes);
    if (iv.lo == 0) zero_counted = primes.empty();
  }
  i128 total = 2 * nonneg - (zero_counted ? 1 : 0);
  if (opt.exclude_singular) {
    if (a == 0) return 0;
    if (a % 3 == 0) {
      const i128 b = 2 * (a / 3);
      bool excluded = false;
      for (auto p : primes) excluded = excluded || b % (static_cast<i128>(p) * static_cast<i128>(p)) == 0;
      if (!excluded && region.contains(a, b)) total -= 2;
    }
  }
  return static_cast<std::uint64_t>(total);
}

}  // namespace detail

/// N2(X) by counting triples (r, v, w).
///
/// For each coprime 1 <= v < w the admissible r form [1, R] with R the largest
/// r such that |A(r, v, w)| <= floor((X/4)^(1/3)); |A| = r^2 p8 num/den for the
/// case factor num/den, so R = isqrt(floor(ta den / (p8 num))). The squarefree
/// r with 3 !| r (cases i, iii) number Q(R) - Q3(R); those with 3 | r (ii, iv)
/// number Q3(R).
inline CensusResult count_n2(const HeightBound& X, unsigned threads = 1) {
  const auto t0 = detail::now();
  const i128 ta = X.a_limit_i128();
  if (ta > kI128Max / 64) throw Error(ErrorKind::guard, "count_n2: height bound too large");
  // Largest R over all cases is below sqrt(48 ta); Q needs mu up to sqrt(R).
  const i128 r_cap = isqrt<i128>(48 * ta);
  if (r_cap > static_cast<i128>(std::numeric_limits<i64>::max())) throw Error(ErrorKind::guard, "count_n2: height bound too large");
  const SieveTables sieve(static_cast<std::uint64_t>(std::max<i128>(1, isqrt<i128>(r_cap) + 1)));

  struct CaseFactor {
    i128 num;
    i128 den;
  };
  static constexpr CaseFactor kCase[4] = {{27, 1}, {1, 3}, {27, 16}, {1, 48}};
  auto r_max = [&](i128 q, const CaseFactor& f) -> std::uint64_t {
    return static_cast<std::uint64_t>(isqrt<i128>(ta * f.den / (q * f.num)));
  };

  // Smallest |A| coefficient is 3/16 (case iv, r = 3); p8(v, w) >= p8(1, w).
  i128 w_last = 1;
  while (3 * p8<i128>(1, w_last + 1) <= 16 * ta) ++w_last;

  const std::uint64_t n2 = parallel_sum(2, static_cast<std::uint64_t>(w_last) + 1, resolve_threads(threads),
                                        [&](std::uint64_t wi) -> std::uint64_t {
    const i128 w = static_cast<i128>(wi);
    std::uint64_t s = 0;
    for (i128 v = 1; v < w; ++v) {
      const i128 q = p8<i128>(v, w);
      if (3 * q > 16 * ta) break;
      if (gcd_of<i128>(v, w) != 1) continue;
      const bool both_odd = (v % 2 == 1) && (w % 2 == 1);
      const CaseFactor& not3 = kCase[both_odd ? 2 : 0];
      const CaseFactor& by3 = kCase[both_odd ? 3 : 1];
      const std::uint64_t r1 = r_max(q, not3);
      const std::uint64_t r3 = r_max(q, by3);
      s += squarefree_count(r1, sieve) - squarefree_count_div3(r1, sieve);
      s += squarefree_count_div3(r3, sieve);
    }
    return s;
  });

  CensusResult res;
  res.X = X.value();
  res.n2 = n2;
  res.lattice_count = n2;
  res.method = CensusMethod::fast;
  res.elapsed_ms = detail::ms_since(t0);
  return res;
}

/// Every triple (r, v, w) with 4|A(r, v, w)|^3 <= X, by direct enumeration of
/// r (height-domination makes the A-condition the whole height condition).
/// Within one 3-divisibility class of r, |A| increases with r; over all cases
/// |A| >= 3 p8(v, w) / 16 (case iv, r = 3).
inline std::vector<TwoPairTriple> enumerate_triples(const HeightBound& X) {
  std::vector<TwoPairTriple> out;
  auto a_fits = [&](const BigInt& absA) { return 4 * absA * absA * absA <= X.value(); };
  auto any_case_fits = [&](i64 v, i64 w) { return a_fits(BigInt(3 * p8<BigInt>(v, w) / 16)); };
  for (i64 w = 2; any_case_fits(1, w); ++w) {
    for (i64 v = 1; v < w && any_case_fits(v, w); ++v) {
      if (gcd_of<i64>(v, w) != 1) continue;
      for (i64 start : {1, 3}) {
        for (i64 r = start;; r += start == 3 ? 3 : (r % 3 == 1 ? 1 : 2)) {
          if (!is_squarefree_u64(static_cast<std::uint64_t>(r))) continue;
          const TwoPairTriple t{r, v, w};
          if (!a_fits(abs(param_AB(t).A))) break;
          out.push_back(t);
        }
      }
    }
  }
  return out;
}

/// Column-by-column lattice count for N1(X), practical far beyond 10^30.
///
/// Each column a contributes the b in at most three intervals (exact binary
/// search on monotone pieces), minus b divisible by l^2 for primes l with
/// l^2 | a (inclusion-exclusion), minus the singular points b = +-2a/3.
inline CensusResult count_n1_fast(const HeightBound& X, unsigned threads = 1) {
  const auto t0 = detail::now();
  const detail::R1Region region(X);
  const i128 a_max = region.a_max();
  if (a_max > 400'000'000) throw Error(ErrorKind::guard, "count_n1_fast: column count exceeds sieve guard");
  const SieveTables sieve(static_cast<std::uint64_t>(std::max<i128>(2, a_max)));
  const std::uint64_t lattice = parallel_sum(1, static_cast<std::uint64_t>(a_max) + 1, resolve_threads(threads),
                                             [&](std::uint64_t a) {
    return detail::count_column(region, static_cast<i128>(a), sieve.square_prime_divisors(a), {});
  });
  CensusResult res = count_n2(X, threads);
  res.lattice_count = lattice;
  res.n1 = lattice - res.n2;
  res.method = CensusMethod::fast;
  res.elapsed_ms = detail::ms_since(t0);
  return res;
}

/// Lattice points of R1(X) without singular or square exclusions; with
/// both_signs_a the count covers a < 0 too (the full region R1'(X)).
inline std::uint64_t count_r1_points(const HeightBound& X, bool both_signs_a, unsigned threads = 1) {
  const detail::R1Region region(X);
  const i128 a_max = region.a_max();
  const detail::ColumnOptions raw{false, false};
  const std::vector<std::uint64_t> none;
  const std::uint64_t positive = parallel_sum(1, static_cast<std::uint64_t>(a_max) + 1, resolve_threads(threads),
                                              [&](std::uint64_t a) {
    return detail::count_column(region, static_cast<i128>(a), none, raw);
  });
  const std::uint64_t zero = detail::count_column(region, 0, none, raw);
  return (both_signs_a ? 2 * positive : positive) + zero;
}

inline const BigInt& naive_guard() {
  static const BigInt g = boost::multiprecision::pow(BigInt(10), 12);
  return g;
}

/// Double loop over a box containing R1(X), testing every point exactly.
///
/// Writing t = X^(1/6): points of R1 satisfy |b| < 0.92 t and a < 1.78 t, so
/// the box 0 <= a <= 2(t + 2), |b| <= t + 2 is safe.
inline CensusResult count_n1_naive(const HeightBound& X) {
  if (X.value() > naive_guard()) throw Error(ErrorKind::guard, "count_n1_naive: X exceeds 10^12");
  const auto t0 = detail::now();
  const i64 t = integer_nth_root<BigInt>(X.value(), 6).convert_to<i64>() + 2;
  std::uint64_t lattice = 0;
  for (i64 a = 0; a <= 2 * t; ++a) {
    for (i64 b = -t; b <= t; ++b) {
      const auto p = r1_membership(X, a, b);
      if (p.in_region && !p.singular && !p.square_excluded) ++lattice;
    }
  }
  CensusResult res = count_n2(X);
  res.lattice_count = lattice;
  res.n1 = lattice - res.n2;
  res.method = CensusMethod::naive;
  res.elapsed_ms = detail::ms_since(t0);
  return res;
}

struct FullScanResult {
  BigInt X;
  std::uint64_t curves = 0;       // minimal, nonsingular (A, B) of height <= X
  std::uint64_t n0 = 0;           // no pair
  std::uint64_t exactly_one = 0;  // exactly one pair
  std::uint64_t n2 = 0;           // exactly two pairs
  std::uint64_t more_than_two = 0;
  double elapsed_ms = 0;

  /// Curves with at least one pair.
  std::uint64_t n1() const { return exactly_one + n2 + more_than_two; }

  FullScanResult& operator+=(const FullScanResult& o) {
    curves += o.curves;
    n0 += o.n0;
    exactly_one += o.exactly_one;
    n2 += o.n2;
    more_than_two += o.more_than_two;
    return *this;
  }
};

namespace detail {

// has_root[A mod m][B mod m]: x^3 + Ax + B has a root modulo m.
class CubicRootSieve {
 public:
  static constexpr std::array<int, 6> kModuli{8, 9, 5, 7, 11, 13};

  CubicRootSieve() {
    for (std::size_t k = 0; k < kModuli.size(); ++k) {
      const int m = kModuli[k];
      auto& t = table_[k];
      t.assign(static_cast<std::size_t>(m * m), 0);
      for (int x = 0; x < m; ++x) {
        for (int a = 0; a < m; ++a) {
          const int b = ((-(x * x * x + a * x)) % m + m) % m;
          t[static_cast<std::size_t>(a * m + b)] = 1;
        }
      }
    }
  }

  // False only when x^3 + Ax + B has no integer root.
  bool may_have_root(i64 A, i64 B) const {
    for (std::size_t k = 0; k < kModuli.size(); ++k) {
      const i64 m = kModuli[k];
      const i64 a = ((A % m) + m) % m;
      const i64 b = ((B % m) + m) % m;
      if (!table_[k][static_cast<std::size_t>(a * m + b)]) return false;
    }
    return true;
  }

 private:
  std::array<std::vector<std::uint8_t>, kModuli.size()> table_;
};

}  // namespace detail

inline const BigInt& full_scan_guard() {
  static const BigInt g = boost::multiprecision::pow(BigInt(10), 11);
  return g;
}

/// Enumerates every minimal nonsingular (A, B) with 4|A|^3 <= X and 27B^2 <= X
/// and classifies it. Cubics with no root modulo a small modulus are tallied
/// as having no pair without a root search.
inline FullScanResult count_full_scan(const HeightBound& X, unsigned threads = 1) {
  if (X.value() > full_scan_guard()) throw Error(ErrorKind::guard, "count_full_scan: X exceeds 10^11");
  const auto t0 = detail::now();
  const i64 ta = X.a_limit().convert_to<i64>();
  const i64 tb = X.b_limit().convert_to<i64>();
  const detail::CubicRootSieve root_sieve;

  FullScanResult res = parallel_accumulate<FullScanResult>(
      0, static_cast<std::uint64_t>(2 * ta + 1), resolve_threads(threads), [&](std::uint64_t idx, FullScanResult& acc) {
        const i64 A = static_cast<i64>(idx) - ta;
        // l >= 2 with l^4 | A; (A, B) is non-minimal iff l^6 | B for one of them.
        std::vector<i64> l6;
        const i64 absA = A < 0 ? -A : A;
        for (i64 l = 2; A == 0 ? l * l * l * l * l * l <= tb : l * l * l * l <= absA; ++l) {
          if (absA % (l * l * l * l) == 0) l6.push_back(l * l * l * l * l * l);
        }
        for (i64 B = -tb; B <= tb; ++B) {
          bool minimal = true;
          for (i64 d : l6) {
            if (B % d == 0) {
              minimal = false;
              break;
            }
          }
          if (!minimal) continue;
          if (4 * static_cast<i128>(A) * A * A + 27 * static_cast<i128>(B) * B == 0) continue;
          ++acc.curves;
          int pairs = 0;
          if (root_sieve.may_have_root(A, B)) pairs = classify_pairs<i64>(A, B).count;
          switch (pairs) {
            case 0: ++acc.n0; break;
            case 1: ++acc.exactly_one; break;
            case 2: ++acc.n2; break;
            default: ++acc.more_than_two; break;
          }
        }
      });
  res.X = X.value();
  res.elapsed_ms = detail::ms_since(t0);
  return res;
}

/// Parity class (v mod 2, w mod 2) of a lattice point.
struct Parity {
  int v;
  int w;
};

/// #{(v, w) : 0 <= v <= w, p8(v, w) <= z, (v, w) = parity mod 2, optionally gcd(v, w) = 1}
inline std::uint64_t count_r2_lattice(i128 z, Parity parity, bool coprime_only) {
  std::uint64_t n = 0;
  for (i128 w = 0; p8<i128>(0, w) <= z; ++w) {
    if (w % 2 != parity.w) continue;
    for (i128 v = parity.v; v <= w; v += 2) {
      if (p8<i128>(v, w) > z) break;
      if (coprime_only && gcd_of<i128>(v, w) != 1) continue;
      ++n;
    }
  }
  return n;
}

}  // namespace isog4
