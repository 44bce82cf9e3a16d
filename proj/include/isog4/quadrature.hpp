#pragma once

#include <isog4/error.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace isog4 {

/// A numerical value with an absolute error bound.
struct Estimate {
  double value = 0;
  double error = 0;
};

inline Estimate operator+(Estimate x, Estimate y) { return {x.value + y.value, x.error + y.error}; }
inline Estimate operator-(Estimate x, Estimate y) { return {x.value - y.value, x.error + y.error}; }

inline constexpr unsigned kQuadMaxDepth = 25;

/// Adaptive 15/31-point Gauss-Kronrod on [lo, hi] to absolute tolerance tol.
///
/// The embedded Gauss/Kronrod difference drives subdivision and is returned
/// as the error bound (plus a rounding allowance); throws convergence when the
/// bound still exceeds tol at the depth limit.
template <class F>
Estimate quad_adaptive(F f, double lo, double hi, double tol) {
  if (!(tol > 0)) throw Error(ErrorKind::invalid_argument, "quad_adaptive: tol must be positive");
  if (lo == hi) return {0, 0};
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  double err = 0;
  double l1 = 0;
  // Boost stops on err <= rel * L1; a coarse pass supplies L1.
  GK::integrate(f, lo, hi, 0, 1.0, &err, &l1);
  const double rel = tol / (2 * std::max(l1, std::numeric_limits<double>::min()));
  const double v = GK::integrate(f, lo, hi, kQuadMaxDepth, rel, &err, &l1);
  const double bound = err + 8 * std::numeric_limits<double>::epsilon() * l1;
  if (!std::isfinite(v) || bound > tol) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "quad_adaptive: error bound %g exceeds tolerance %g", bound, tol);
    throw Error(ErrorKind::convergence, msg);
  }
  return {v, bound};
}

}  // namespace isog4
