#include "quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <string>

#include "binquant/error.hpp"

namespace binquant::detail {

double integrate(const std::function<double(double)>& f, std::span<const double> points,
                 double abs_tol) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  constexpr unsigned kMaxDepth = 15;
  constexpr double kRelTol = 1e-12;

  double total = 0.0;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    double error = 0.0;
    double l1 = 0.0;
    total += Rule::integrate(f, points[i], points[i + 1], kMaxDepth, kRelTol, &error, &l1);
    total_error += error;
  }
  if (!std::isfinite(total) || total_error > abs_tol) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "quadrature did not reach tolerance: estimate %.17g, error %.3g", total,
                  total_error);
    throw QuadratureError(buf);
  }
  return total;
}

}  // namespace binquant::detail
