#pragma once

#include <functional>
#include <span>

namespace binquant::detail {

/// Adaptive Gauss-Kronrod over the consecutive pieces [points[i], points[i+1]].
/// End points may be infinite. Throws QuadratureError when the summed error
/// estimate exceeds `abs_tol` or the integral is not finite.
double integrate(const std::function<double(double)>& f, std::span<const double> points,
                 double abs_tol = 1e-10);

}  // namespace binquant::detail
