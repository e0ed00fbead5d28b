#pragma once

#include <cstddef>
#include <functional>

namespace hartogs {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // sum of |K15 - G7| over the final partition
  std::size_t intervals = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

// Globally adaptive Gauss-Kronrod (7/15) on [a, b]; the interval with the
// largest error estimate is bisected until error <= max(atol, rtol |value|).
// Integrand nodes are interior, so integrable endpoint singularities are allowed.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double atol = 1e-10, double rtol = 1e-12,
                           std::size_t max_intervals = 4000);

// Integral over [a, +inf) via u = a + s/(1 - s).
QuadratureResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                       double atol = 1e-10, double rtol = 1e-12,
                                       std::size_t max_intervals = 4000);

}  // namespace hartogs
