#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace lpsym {

/// Adaptive 21-point Gauss-Kronrod on [a, b]. The tolerance is relative to
/// the L1 norm of the integrand, which is at most one for every integrand
/// used in this library, so it also bounds the absolute error.
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-10) {
  if (!(b > a)) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, 20, tol);
}

}  // namespace lpsym
