#pragma once

// Asymptotic constants of N1(X) = c11 X^(1/3) + c12 X^(1/6) + ... and
// N2(X) = c21 X^(1/6) + ..., with the auxiliary integrals and series they
// are built from. Every value carries an absolute error bound.

#include <isog4/error.hpp>
#include <isog4/quadrature.hpp>

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <cstdint>
#include <numeric>

namespace isog4 {

inline constexpr double kDefaultConstantsTol = 1e-12;

namespace detail {

inline double p8_real(double v, double w) {
  const double v4 = v * v * v * v;
  const double w4 = w * w * w * w;
  return v4 * v4 + 14 * v4 * w4 + w4 * w4;
}

// 1 / sqrt(p8(u, 1)); decreasing on [0, 1] from 1 to 1/4.
inline double inv_sqrt_p8(double u) { return 1 / std::sqrt(p8_real(u, 1)); }

// Rounding allowance for a double result of magnitude x built from n operations.
inline double rounding(double x, double n = 16) { return n * std::numeric_limits<double>::epsilon() * std::abs(x); }

}  // namespace detail

inline double zeta2() { return boost::math::constants::pi_sqr<double>() / 6; }
inline double zeta4() {
  const double p2 = boost::math::constants::pi_sqr<double>();
  return p2 * p2 / 90;
}

/// alpha1 = ((sqrt6 + sqrt3)/18)^(1/3) - ((sqrt6 - sqrt3)/18)^(1/3).
inline Estimate compute_alpha1() {
  const double s6 = std::sqrt(6.0);
  const double s3 = std::sqrt(3.0);
  const double v = std::cbrt((s6 + s3) / 18) - std::cbrt((s6 - s3) / 18);
  return {v, detail::rounding(v, 64)};
}

/// alpha2 = 2^(-1/3) 3^(-1/2).
inline Estimate compute_alpha2() {
  const double v = 1 / (std::cbrt(2.0) * std::sqrt(3.0));
  return {v, detail::rounding(v)};
}

/// alpha3 = int_0^1 du / sqrt(p8(u, 1)).
inline Estimate compute_alpha3(double tol = kDefaultConstantsTol) {
  return quad_adaptive(detail::inv_sqrt_p8, 0.0, 1.0, tol);
}

/// g(t) = ((t^4 + 48)^(1/2) - 7)^(1/4); g(1) = 0, g(2) = 1.
inline double alpha4_lower_limit(double t) {
  const double t4 = t * t * t * t;
  const double inner = std::sqrt(t4 + 48) - 7;
  return inner <= 0 ? 0.0 : std::sqrt(std::sqrt(inner));
}

/// alpha4 = int_1^2 int_{g(t)}^1 du dt / sqrt(p8(u, 1)).
///
/// g has a quarter-power branch point at t = 1; the substitution t = 1 + s^4
/// makes the outer integrand smooth on [0, 1].
inline Estimate compute_alpha4(double tol = kDefaultConstantsTol) {
  const double inner_tol = tol / 4;
  double inner_err = 0;
  auto outer = [&](double s) {
    const double s3 = s * s * s;
    const double lo = s >= 1 ? 1.0 : alpha4_lower_limit(1 + s3 * s);
    const Estimate in = quad_adaptive(detail::inv_sqrt_p8, lo, 1.0, inner_tol);
    inner_err = std::max(inner_err, in.error);
    return 4 * s3 * in.value;
  };
  Estimate e = quad_adaptive(outer, 0.0, 1.0, tol / 2);
  // The outer weight 4 s^3 integrates to 1.
  e.error += inner_err;
  return e;
}

/// beta = (1/2) int_{pi/4}^{pi/2} p8(cos t, sin t)^(-1/4) dt; the region
/// p8(v, w) <= z, 0 <= v <= w has area beta z^(1/4).
inline Estimate compute_beta(double tol = kDefaultConstantsTol) {
  const double pi = boost::math::constants::pi<double>();
  auto f = [](double t) { return 0.5 / std::sqrt(std::sqrt(detail::p8_real(std::cos(t), std::sin(t)))); };
  return quad_adaptive(f, pi / 4, pi / 2, tol);
}

struct IIntegrals {
  Estimate i1, i2, i3, i4;
};

/// i1, i2, i3 and i4 = i1 + i2 - i3; 2 i4 X^(1/3) is the area of the full
/// region |a^2 - 3b^2| <= (X/4)^(1/3), |a^2 b - 2b^3| <= (X/27)^(1/2).
inline IIntegrals compute_i_integrals(double tol = kDefaultConstantsTol) {
  const double a1 = compute_alpha1().value;
  const double a2 = compute_alpha2().value;
  const double c = 1 / std::cbrt(4.0);
  const double r27 = std::sqrt(27.0);
  IIntegrals r;
  r.i1 = quad_adaptive([&](double u) { return 2 * std::sqrt(3 * u * u + c); }, 0.0, a1, tol / 3);
  r.i2 = quad_adaptive([&](double u) { return 2 * std::sqrt(2 * u * u + 1 / (r27 * u)); }, a1, 2 * a2, tol / 3);
  // 3u^2 - 4^(-1/3) = 3(u - a2)(u + a2) vanishes at u = a2; u = a2 + s^2 removes the branch point.
  r.i3 = quad_adaptive([&](double s) { return 4 * s * s * std::sqrt(3 * (2 * a2 + s * s)); }, 0.0, std::sqrt(a2), tol / 3);
  r.i4 = r.i1 + r.i2 - r.i3;
  return r;
}

enum class ParityClass {
  mixed,     // v, w of opposite parity
  both_odd,  // v, w both odd
};

namespace detail {

inline std::uint64_t first_v(ParityClass k, std::uint64_t w) { return k == ParityClass::both_odd || w % 2 == 0 ? 1 : 2; }

inline bool admissible_w(ParityClass k, std::uint64_t w) { return k == ParityClass::mixed || w % 2 == 1; }

// sum over v < w in the class of 1/sqrt(p8(v, w)), coprime pairs only if asked.
inline long double series_row(ParityClass k, std::uint64_t w, bool coprime_only) {
  long double s = 0;
  const double wd = static_cast<double>(w);
  for (std::uint64_t v = first_v(k, w); v < w; v += 2) {
    if (coprime_only && std::gcd(v, w) != 1) continue;
    s += inv_sqrt_p8(static_cast<double>(v) / wd);
  }
  const long double w2 = wd * wd;
  return s / (w2 * w2);
}

// Bracket [lo, hi] for the tail sum over w > W of series_row(k, w, false).
//
// For fixed w the class members u = v/w have spacing 2/w, start at u <= 2/w
// and end within 2/w of 1. As f(u) = p8(u,1)^(-1/2) decreases from 1, the row
// sum lies in w^-4 [w alpha3/2 - 1, w alpha3/2 + 1]. Sums of w^-3, w^-4 over
// the admissible w are then bracketed by integrals.
struct Bracket {
  double lo;
  double hi;
};

inline Bracket series_tail(ParityClass k, std::uint64_t W, Estimate alpha3) {
  std::uint64_t w1 = W + 1;
  while (!admissible_w(k, w1)) ++w1;
  const double step = k == ParityClass::mixed ? 1.0 : 2.0;
  const double x = static_cast<double>(w1);
  const double g3_lo = 1 / (2 * step * x * x);
  const double g3_hi = g3_lo + 1 / (x * x * x);
  const double g4_lo = 1 / (3 * step * x * x * x);
  const double g4_hi = g4_lo + 1 / (x * x * x * x);
  const double a_lo = alpha3.value - alpha3.error;
  const double a_hi = alpha3.value + alpha3.error;
  return {std::max(0.0, a_lo / 2 * g3_lo - g4_hi), a_hi / 2 * g3_hi + g4_hi};
}

}  // namespace detail

/// s0' (mixed parity) or s1' (both odd) = sum over 1 <= v < w in the class of
/// 1/sqrt(p8(v, w)).
///
/// The partial sum runs to the smallest W whose tail bracket has half-width
/// below tol/2; the reported value adds the bracket midpoint.
inline Estimate compute_series(ParityClass k, double tol = kDefaultConstantsTol) {
  if (!(tol > 0)) throw Error(ErrorKind::invalid_argument, "compute_series: tol must be positive");
  const Estimate alpha3 = compute_alpha3();
  std::uint64_t W = 8;
  auto half_width = [&](std::uint64_t w) {
    const auto b = detail::series_tail(k, w, alpha3);
    return (b.hi - b.lo) / 2;
  };
  while (half_width(W) > tol / 2) W *= 2;
  std::uint64_t lo = W / 2;
  while (W - lo > 1) {
    const std::uint64_t mid = lo + (W - lo) / 2;
    (half_width(mid) > tol / 2 ? lo : W) = mid;
  }
  long double partial = 0;
  for (std::uint64_t w = 2; w <= W; ++w) {
    if (detail::admissible_w(k, w)) partial += detail::series_row(k, w, false);
  }
  const auto tail = detail::series_tail(k, W, alpha3);
  const double value = static_cast<double>(partial) + (tail.lo + tail.hi) / 2;
  return {value, (tail.hi - tail.lo) / 2 + detail::rounding(value, static_cast<double>(W))};
}

/// Sum over coprime pairs of the class, by direct summation with the tail
/// bound sum_{w > W} (w/2 + 1) w^-4 < tol (p8(v, w) >= w^8).
inline Estimate compute_coprime_series(ParityClass k, double tol = 1e-8) {
  if (!(tol > 0)) throw Error(ErrorKind::invalid_argument, "compute_coprime_series: tol must be positive");
  // sum_{w > W} (w/2 + 1) w^-4 <= 1/(4 W^2) + 1/(3 W^3)
  std::uint64_t W = 2;
  auto bound = [](double w) { return 1 / (4 * w * w) + 1 / (3 * w * w * w); };
  while (bound(static_cast<double>(W)) >= tol) W = W + W / 4 + 1;
  long double partial = 0;
  for (std::uint64_t w = 2; w <= W; ++w) {
    if (detail::admissible_w(k, w)) partial += detail::series_row(k, w, true);
  }
  const double value = static_cast<double>(partial);
  return {value, bound(static_cast<double>(W)) + detail::rounding(value, static_cast<double>(W))};
}

struct ConstantsReport {
  double tol = kDefaultConstantsTol;
  Estimate zeta2, zeta4;
  Estimate alpha1, alpha2, alpha3, alpha4, beta;
  Estimate i1, i2, i3, i4;
  Estimate s0_prime, s1_prime, s0;
  Estimate c11, c12, c21;

  /// 2 beta - (alpha3 + alpha4) with its error bound.
  Estimate beta_identity() const { return {2 * beta.value - alpha3.value - alpha4.value, 2 * beta.error + alpha3.error + alpha4.error}; }

  /// s0 - 16 s0' / (15 zeta(4)) with its error bound.
  Estimate s0_identity() const {
    const double k = 16 / (15 * zeta4.value);
    return {s0.value - k * s0_prime.value, s0.error + k * s0_prime.error + detail::rounding(s0.value)};
  }

  bool beta_identity_holds() const {
    const Estimate e = beta_identity();
    return std::abs(e.value) <= e.error;
  }
  bool s0_identity_holds() const {
    const Estimate e = s0_identity();
    return std::abs(e.value) <= e.error;
  }
};

/// Evaluates every constant; quadratures and series run to tol, the coprime
/// series s0 to max(tol, 1e-8).
inline ConstantsReport assemble_constants(double tol = kDefaultConstantsTol) {
  if (!(tol > 0)) throw Error(ErrorKind::invalid_argument, "assemble_constants: tol must be positive");
  ConstantsReport r;
  r.tol = tol;
  r.zeta2 = {zeta2(), detail::rounding(zeta2())};
  r.zeta4 = {zeta4(), detail::rounding(zeta4())};
  r.alpha1 = compute_alpha1();
  r.alpha2 = compute_alpha2();
  r.alpha3 = compute_alpha3(tol);
  r.alpha4 = compute_alpha4(tol);
  r.beta = compute_beta(tol);
  const IIntegrals ii = compute_i_integrals(tol);
  r.i1 = ii.i1;
  r.i2 = ii.i2;
  r.i3 = ii.i3;
  r.i4 = ii.i4;
  r.s0_prime = compute_series(ParityClass::mixed, tol);
  r.s1_prime = compute_series(ParityClass::both_odd, tol);
  r.s0 = compute_coprime_series(ParityClass::mixed, std::max(tol, 1e-8));

  const double z2 = r.zeta2.value;
  const double z4 = r.zeta4.value;
  r.c11 = {r.i4.value / z4, r.i4.error / z4 + detail::rounding(r.i4.value / z4)};
  const double k21 = 16 / (std::cbrt(2.0) * std::sqrt(27.0) * 5 * z2 * z4);
  const double c21 = k21 * (r.s0_prime.value + 4 * r.s1_prime.value);
  r.c21 = {c21, k21 * (r.s0_prime.error + 4 * r.s1_prime.error) + detail::rounding(c21)};
  const double c12 = -3 * r.alpha2.value / z2 - c21;
  r.c12 = {c12, 3 * r.alpha2.error / z2 + r.c21.error + detail::rounding(c12)};
  return r;
}

}  // namespace isog4
