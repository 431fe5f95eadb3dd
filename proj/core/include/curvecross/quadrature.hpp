#pragma once

#include <functional>

namespace curvecross {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Adaptive Gauss-Kronrod (15/31/61-point pairs, interval bisection) on
/// [a, b]. Succeeds when the error estimate is below
/// max(rel_tol * |value|, abs_tol); otherwise throws ConvergenceError.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol, double abs_tol = 0.0);

}  // namespace curvecross
