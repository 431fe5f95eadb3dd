#include "curvecross/quadrature.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "curvecross/error.hpp"

namespace curvecross {

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol, double abs_tol) {
  using boost::math::quadrature::gauss_kronrod;
  constexpr unsigned kMaxDepth = 15;
  if (a == b) return {0.0, 0.0};

  double error = 0.0;
  const double value = gauss_kronrod<double, 61>::integrate(f, a, b, kMaxDepth, rel_tol, &error);
  if (!std::isfinite(value) || error > std::max(rel_tol * std::abs(value), abs_tol)) {
    std::ostringstream msg;
    msg << "quadrature did not converge on [" << a << ", " << b << "]: value " << value << ", error estimate "
        << error;
    throw ConvergenceError(msg.str());
  }
  return {value, error};
}

}  // namespace curvecross
