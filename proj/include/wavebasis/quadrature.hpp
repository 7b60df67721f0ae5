#pragma once

#include <functional>

namespace wavebasis {

/// Adaptive Gauss-Kronrod integration of a smooth integrand.
/// Throws IntegrationError when the error estimate stays above tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-10);

/// tanh-sinh integration; tolerates integrable endpoint singularities such as
/// the 1/sqrt behavior of k near a turning point.
double integrate_endpoint_singular(const std::function<double(double)>& f, double a, double b,
                                   double tol = 1e-10);

}  // namespace wavebasis
