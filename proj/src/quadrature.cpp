#include "wavebasis/quadrature.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "wavebasis/errors.hpp"

namespace wavebasis {

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol) {
  if (a == b) return 0.0;
  double error = 0.0, l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, 20, tol, &error, &l1);
  // error is an absolute estimate; accept absolute-or-relative convergence
  if (error > tol * std::max(1.0, l1) * 10.0)
    throw IntegrationError("adaptive quadrature did not converge to tolerance");
  return value;
}

double integrate_endpoint_singular(const std::function<double(double)>& f, double a, double b,
                                   double tol) {
  if (a == b) return 0.0;
  thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
  double error = 0.0, l1 = 0.0;
  std::size_t levels = 0;
  const double value = integrator.integrate(f, a, b, tol, &error, &l1, &levels);
  if (!std::isfinite(value))
    throw IntegrationError("tanh-sinh quadrature produced a non-finite value");
  return value;
}

}  // namespace wavebasis
