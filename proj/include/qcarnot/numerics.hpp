#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "qcarnot/errors.hpp"

namespace qcarnot::numerics {

struct QuadratureTolerance {
  double absolute = 1e-13;
  double relative = 1e-11;
};

/// Adaptive 61-point Gauss-Kronrod over [a, b] (a > b gives the oriented
/// integral). The estimate must satisfy err <= max(abs, rel * |I|).
template <typename F>
double integrate(F&& f, double a, double b, QuadratureTolerance tol = {},
                 const char* what = "integral") {
  if (a == b) return 0.0;
  double error = 0.0;
  double l1 = 0.0;
  // Map onto [-1, 1] first: Boost 1.74 compares an unscaled error estimate
  // against a scaled tolerance, which forces full-depth recursion on short
  // intervals.
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  auto mapped = [&](double x) { return half * f(mid + half * x); };
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          mapped, -1.0, 1.0, 15, tol.relative * 1e-2, &error, &l1);
  if (!std::isfinite(value) ||
      error > std::max(tol.absolute, tol.relative * std::abs(value))) {
    std::ostringstream msg;
    msg << "quadrature did not converge for " << what << " on [" << a << ", "
        << b << "]: value=" << value << " error=" << error;
    throw NumericalError(msg.str());
  }
  return value;
}

/// Root of f in [lo, hi] by TOMS 748. f(lo) and f(hi) must differ in sign.
/// Terminates when the bracket width is within abs_tol + rel_tol * |x|.
template <typename F>
double find_root(F&& f, double lo, double hi, double abs_tol, double rel_tol,
                 std::uintmax_t max_iterations = 200) {
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw NumericalError("root not bracketed on [" + std::to_string(lo) +
                         ", " + std::to_string(hi) + "]");
  }
  auto done = [abs_tol, rel_tol](double a, double b) {
    return std::abs(a - b) <=
           abs_tol + rel_tol * std::min(std::abs(a), std::abs(b));
  };
  std::uintmax_t iterations = max_iterations;
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, done,
                                                  iterations);
  if (iterations >= max_iterations) {
    throw NumericalError("root finder exhausted its iteration budget");
  }
  return 0.5 * (a + b);
}

struct Minimum {
  double x;
  double value;
};

/// Brent's golden-section/parabolic minimization of f on [lo, hi].
template <typename F>
Minimum minimize(F&& f, double lo, double hi,
                 int bits = std::numeric_limits<double>::digits / 2,
                 std::uintmax_t max_iterations = 200) {
  std::uintmax_t iterations = max_iterations;
  auto [x, fx] =
      boost::math::tools::brent_find_minima(f, lo, hi, bits, iterations);
  return {x, fx};
}

}  // namespace qcarnot::numerics
