#pragma once

// Short Weierstrass models y^2 = x^3 + Ax + B, detection of pairs of
// Galois-stable cyclic subgroups of order 4, and the (r, v, w) parametrization
// of curves with two such pairs.

#include <isog4/arithmetic.hpp>
#include <isog4/error.hpp>
#include <isog4/int_types.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace isog4 {

using Rational = boost::multiprecision::cpp_rational;

/// p8(v, w) = v^8 + 14 v^4 w^4 + w^8
template <ExactInt T>
T p8(const T& v, const T& w) {
  const T v4 = v * v * v * v;
  const T w4 = w * w * w * w;
  return v4 * v4 + 14 * v4 * w4 + w4 * w4;
}

/// p12(v, w) = v^12 - 33 v^8 w^4 - 33 v^4 w^8 + w^12
template <ExactInt T>
T p12(const T& v, const T& w) {
  const T v4 = v * v * v * v;
  const T w4 = w * w * w * w;
  return v4 * v4 * v4 - 33 * v4 * v4 * w4 - 33 * v4 * w4 * w4 + w4 * w4 * w4;
}

struct MinimalCurve {
  BigInt A;
  BigInt B;

  friend bool operator==(const MinimalCurve&, const MinimalCurve&) = default;
};

template <ExactInt T>
bool is_singular(const T& A, const T& B) {
  const BigInt a = to_big(A);
  const BigInt b = to_big(B);
  return 4 * a * a * a + 27 * b * b == 0;
}

/// No integer l >= 2 with l^4 | A and l^6 | B. Checking every l (not only
/// primes) is equivalent and avoids a prime table.
template <ExactInt T>
bool is_minimal(const T& A, const T& B) {
  if (A == 0 && B == 0) return false;
  const T a = abs_value(A);
  const T b = abs_value(B);
  T lmax = a != 0 ? integer_nth_root(a, 4) : integer_nth_root(b, 6);
  if (b != 0) lmax = std::min(lmax, integer_nth_root(b, 6));
  for (T l = 2; l <= lmax; ++l) {
    const T l2 = l * l;
    if (a % (l2 * l2) != 0) continue;
    if (b == 0 || b % (l2 * l2 * l2) == 0) return false;
  }
  return true;
}

/// max(4|A|^3, 27 B^2)
inline BigInt height(const MinimalCurve& c) {
  const BigInt a = abs(c.A);
  const BigInt h4 = 4 * a * a * a;
  const BigInt h27 = 27 * c.B * c.B;
  return h4 > h27 ? h4 : h27;
}

namespace detail {

template <ExactInt T>
widen_t<T> eval_cubic(const T& x, const T& A, const T& B) {
  using W = widen_t<T>;
  const W wx = W(x);
  return wx * wx * wx + W(A) * wx + W(B);
}

// Integer root of the cubic inside [lo, hi] where it is monotone.
template <ExactInt T>
std::optional<T> root_on_monotone_piece(T lo, T hi, bool increasing, const T& A, const T& B) {
  if (lo > hi) return std::nullopt;
  // Smallest x in [lo, hi] with sign(f(x)) past zero in the direction of travel.
  auto past_zero = [&](const T& x) {
    const auto v = eval_cubic(x, A, B);
    return increasing ? v >= 0 : v <= 0;
  };
  if (!past_zero(hi)) return std::nullopt;
  while (lo < hi) {
    T mid = lo + (hi - lo) / 2;
    if (past_zero(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (eval_cubic(lo, A, B) == 0) return lo;
  return std::nullopt;
}

}  // namespace detail

/// All integer roots of x^3 + Ax + B, ascending and distinct.
///
/// The real line splits into at most three monotone pieces with breakpoints at
/// +-floor(sqrt(-A/3)) when A < 0; each piece holds at most one root, found by
/// exact binary search. Roots are bounded by 2 max(|A|^(1/2), |B|^(1/3)).
template <ExactInt T>
std::vector<T> integer_roots_cubic(const T& A, const T& B) {
  const T bound = 2 * (std::max(isqrt(abs_value(A)), icbrt(abs_value(B))) + 1);
  std::vector<T> roots;
  auto push = [&](std::optional<T> r) {
    if (r && (roots.empty() || roots.back() != *r)) roots.push_back(*r);
  };
  if (A >= 0) {
    push(detail::root_on_monotone_piece<T>(-bound, bound, true, A, B));
  } else {
    const T k = isqrt(T(-A / 3));
    push(detail::root_on_monotone_piece<T>(-bound, T(-k - 1), true, A, B));
    push(detail::root_on_monotone_piece<T>(T(-k), k, false, A, B));
    push(detail::root_on_monotone_piece<T>(T(k + 1), bound, true, A, B));
  }
  return roots;
}

/// One pair of Galois-stable cyclic order-4 subgroups. Translating x by the
/// root b0 gives y^2 = x(x^2 + gamma x + delta^2) with gamma = 3 b0, delta = a.
template <ExactInt T>
struct PairWitness {
  T b0;
  T a;  // a > 0, a^2 = 3 b0^2 + A
  T gamma;
  T delta;

  friend bool operator==(const PairWitness&, const PairWitness&) = default;
};

template <ExactInt T>
struct PairClassification {
  int count = 0;
  std::vector<PairWitness<T>> witnesses;
  std::vector<T> roots;  // every integer root of x^3 + Ax + B
};

/// Counts integer roots b0 of x^3 + Ax + B for which 3 b0^2 + A is a positive square.
template <ExactInt T>
PairClassification<T> classify_pairs(const T& A, const T& B) {
  if (is_singular(A, B)) throw Error(ErrorKind::singular, "classify_pairs: 4A^3 + 27B^2 = 0");
  PairClassification<T> out;
  out.roots = integer_roots_cubic(A, B);
  for (const T& b0 : out.roots) {
    const T shifted = 3 * b0 * b0 + A;
    if (shifted <= 0) continue;
    if (auto a = is_perfect_square(shifted)) {
      out.witnesses.push_back(PairWitness<T>{b0, *a, T(3 * b0), *a});
    }
  }
  out.count = static_cast<int>(out.witnesses.size());
  return out;
}

inline PairClassification<BigInt> classify_pairs(const MinimalCurve& c) { return classify_pairs(c.A, c.B); }

enum class TripleCase { i, ii, iii, iv };

inline std::string_view case_name(TripleCase c) {
  switch (c) {
    case TripleCase::i: return "i";
    case TripleCase::ii: return "ii";
    case TripleCase::iii: return "iii";
    case TripleCase::iv: return "iv";
  }
  return "?";
}

inline TripleCase triple_case(bool three_divides_r, bool both_odd) {
  if (both_odd) return three_divides_r ? TripleCase::iv : TripleCase::iii;
  return three_divides_r ? TripleCase::ii : TripleCase::i;
}

inline bool is_squarefree_u64(std::uint64_t n) {
  if (n == 0) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return false;
    }
  }
  return true;
}

/// (r, v, w): r squarefree positive, 1 <= v < w, gcd(v, w) = 1.
struct TwoPairTriple {
  i64 r = 0;
  i64 v = 0;
  i64 w = 0;

  TripleCase case_tag() const { return triple_case(r % 3 == 0, (v % 2 == 1) && (w % 2 == 1)); }

  bool valid() const {
    return r >= 1 && v >= 1 && v < w && gcd_of<i64>(v, w) == 1 && is_squarefree_u64(static_cast<std::uint64_t>(r));
  }

  friend bool operator==(const TwoPairTriple&, const TwoPairTriple&) = default;
};

namespace detail {

inline BigInt exact_div(const BigInt& n, long d) {
  if (n % d != 0) throw std::logic_error("param_AB: inexact division (triple invariant violated)");
  return n / d;
}

}  // namespace detail

/// Minimal model (A, B) of the curve with parameters (r, v, w).
///
///   (i)   3 !| r, v !== w (2):  A = -27 r^2 p8,     B = 54 r^3 p12
///   (ii)  3 | r,  v !== w (2):  A = -r^2 p8 / 3,    B = 2 r^3 p12 / 27
///   (iii) 3 !| r, v, w odd:     A = -27 r^2 p8 / 16, B = 27 r^3 p12 / 32
///   (iv)  3 | r,  v, w odd:     A = -r^2 p8 / 48,   B = r^3 p12 / 864
inline MinimalCurve param_AB(const TwoPairTriple& t) {
  if (!t.valid()) throw std::logic_error("param_AB: triple invariants violated");
  const BigInt r = t.r;
  const BigInt q8 = p8<BigInt>(t.v, t.w);
  const BigInt q12 = p12<BigInt>(t.v, t.w);
  const BigInt r2p8 = r * r * q8;
  const BigInt r3p12 = r * r * r * q12;
  switch (t.case_tag()) {
    case TripleCase::i: return {-27 * r2p8, 54 * r3p12};
    case TripleCase::ii: return {-detail::exact_div(r2p8, 3), detail::exact_div(2 * r3p12, 27)};
    case TripleCase::iii: return {-detail::exact_div(27 * r2p8, 16), detail::exact_div(27 * r3p12, 32)};
    case TripleCase::iv: return {-detail::exact_div(r2p8, 48), detail::exact_div(r3p12, 864)};
  }
  throw std::logic_error("param_AB: unreachable");
}

/// s with n = s m^2, s squarefree (n > 0). Trial division up to n^(1/3);
/// the cofactor left then has at most two prime factors.
template <ExactInt T>
T squarefree_kernel(T n) {
  if (n <= 0) throw Error(ErrorKind::invalid_argument, "squarefree_kernel: n must be positive");
  T kernel = 1;
  for (T p = 2; p * p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e % 2 == 1) kernel *= p;
  }
  if (n > 1 && !is_perfect_square(n)) kernel *= n;
  return kernel;
}

/// Inverse of param_AB on curves with two pairs.
///
/// The three 2-torsion roots e0, e1, e2 are integers. For the ordering that
/// matches y^2 = x(x - r)(x - r eta^2): d1 = e1 - e0 = u^2 r, d2 = e2 - e0 =
/// u^2 r eta^2 with 0 < d2 < d1, so eta = s / d1 with s^2 = d1 d2, and
/// tau = (1 - eta)/sqrt(1 - eta^2) = (d1 - s) / t with t^2 = d1 (d1 - d2).
template <ExactInt T>
std::optional<TwoPairTriple> recover_triple(const T& A, const T& B) {
  if (is_singular(A, B)) return std::nullopt;
  const auto cls = classify_pairs(A, B);
  if (cls.count != 2 || cls.roots.size() != 3) return std::nullopt;
  const auto& e = cls.roots;
  static constexpr std::array<std::array<int, 3>, 6> orders{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (const auto& ord : orders) {
    const BigInt d1 = to_big(e[ord[1]]) - to_big(e[ord[0]]);
    const BigInt d2 = to_big(e[ord[2]]) - to_big(e[ord[0]]);
    if (!(d2 > 0 && d2 < d1)) continue;
    const auto s = is_perfect_square(BigInt(d1 * d2));
    if (!s) continue;
    const auto t = is_perfect_square(BigInt(d1 * (d1 - d2)));
    if (!t) continue;
    BigInt num = d1 - *s;
    BigInt den = *t;
    const BigInt g = gcd_of(num, den);
    num /= g;
    den /= g;
    const BigInt r = squarefree_kernel(d1);
    if (!fits_i64(r) || !fits_i64(den)) continue;
    TwoPairTriple cand{r.convert_to<i64>(), num.convert_to<i64>(), den.convert_to<i64>()};
    if (!cand.valid()) continue;
    const MinimalCurve c = param_AB(cand);
    if (c.A == to_big(A) && c.B == to_big(B)) return cand;
  }
  return std::nullopt;
}

inline std::optional<TwoPairTriple> recover_triple(const MinimalCurve& c) { return recover_triple(c.A, c.B); }

/// Roots (0, r, r eta^2) of y^2 = x(x - r)(x - r eta^2), eta = (1 - tau^2)/(1 + tau^2), tau = v/w.
inline std::array<Rational, 3> legendre_two_pair_model(const TwoPairTriple& t) {
  const BigInt v2 = BigInt(t.v) * t.v;
  const BigInt w2 = BigInt(t.w) * t.w;
  const Rational eta(w2 - v2, w2 + v2);
  return {Rational(0), Rational(t.r), Rational(t.r) * eta * eta};
}

using Complex = std::complex<double>;

struct TorsionPoint {
  Complex x;
  Complex y;
};

/// The four points P with 2P = (rho1, 0) on y^2 = (x - rho1)(x - rho2)(x - rho3):
/// x = rho1 + e s2 s3, y = f s2 s3 (s2 + e s3), s_k = sqrt(rho1 - rho_k), e, f = +-1.
inline std::array<TorsionPoint, 4> four_torsion_points(Complex rho1, Complex rho2, Complex rho3) {
  if (rho1 == rho2 || rho1 == rho3 || rho2 == rho3) {
    throw Error(ErrorKind::invalid_argument, "four_torsion_points: roots must be distinct");
  }
  const Complex s2 = std::sqrt(rho1 - rho2);
  const Complex s3 = std::sqrt(rho1 - rho3);
  std::array<TorsionPoint, 4> pts;
  std::size_t k = 0;
  for (double e : {1.0, -1.0}) {
    for (double f : {1.0, -1.0}) {
      pts[k++] = {rho1 + e * s2 * s3, f * s2 * s3 * (s2 + e * s3)};
    }
  }
  return pts;
}

}  // namespace isog4
