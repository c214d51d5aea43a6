#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "binquant/channel.hpp"
#include "binquant/noise_model.hpp"

namespace binquant {

/// Asymptotic variance factor B(eps) = F(eps) [1 - F(eps)] / f(eps)^2 of the binary-quantized
/// location estimator, computed from the model's cdf and pdf. CRB = B / N.
/// Throws OverflowError when the density or tail mass underflows.
double b_of_eps(const NoiseModel& model, double eps);

/// Laplacian closed form delta^2 [2 exp(|eps / delta|) - 1].
double b_laplacian_closed(double delta, double eps);

/// Generalized Gaussian closed form written with Gamma and the lower incomplete gamma.
double b_ggd_closed(double beta, double delta, double eps);

/// Bound through a binary symmetric channel: B(eps) + q(1 - q) / (1 - 2q)^2 / f(eps)^2.
double b_bsc(const NoiseModel& model, const ChannelModel& channel, double eps);

struct BoundRow {
  double epsilon = 0.0;
  double b_value = 0.0;
  double crb = 0.0;

  friend bool operator==(const BoundRow&, const BoundRow&) = default;
};

struct BoundCurve {
  std::string model_desc;
  std::size_t n_samples = 1;
  double channel_q = 0.0;
  std::vector<BoundRow> rows;
};

/// Evaluates b_bsc on a strictly increasing epsilon grid.
BoundCurve make_bound_curve(const NoiseModel& model, const ChannelModel& channel, std::size_t n_samples,
                            std::span<const double> eps_grid);

/// `points` values evenly spaced on [lo, hi]; a single point requires lo == hi.
std::vector<double> uniform_grid(double lo, double hi, std::size_t points);

enum class Curvature { local_min, local_max, flat_or_higher_order, underivable };

std::string_view curvature_name(Curvature c);

/// Second derivative of B at eps = 0, -f''(0) / (2 f(0)^3) - 2.
///
/// `value` is empty when the derivative does not exist as a float: for the Laplacian
/// (underivable) and for GGD with 1 < beta < 2, where f''(0) = -inf makes the value +inf
/// (classification local_min, `infinite` set).
struct CurvatureAtZero {
  std::optional<double> value;
  Curvature classification = Curvature::underivable;
  bool infinite = false;
};

CurvatureAtZero b_second_deriv_at_0(const NoiseModel& model);

/// Local optimality of the symmetric threshold, -f''(0) / (1 - 2q)^2 > 4 f(0)^3.
struct SymmetryVerdict {
  double q = 0.0;
  double pdf_at_0 = 0.0;
  std::optional<double> pdf_d2_at_0;  // empty when underivable or divergent
  bool pdf_d2_diverges = false;       // f''(0) = -inf
  std::optional<double> lhs;          // -f''(0) / (1 - 2q)^2; empty when underivable or infinite
  double rhs = 0.0;                   // 4 f(0)^3
  std::optional<bool> condition_holds;
  std::optional<double> second_deriv_at_0;  // d^2 B' / d eps^2 at 0, when finite
  Curvature classification = Curvature::underivable;
};

SymmetryVerdict symmetry_condition(const NoiseModel& model, const ChannelModel& channel);

/// Smallest channel flip probability making eps = 0 a local minimum: 0 when it already is,
/// 1/2 (1 - sqrt(-f''(0) / (4 f(0)^3))) when f''(0) < 0, empty when f''(0) >= 0.
/// Throws NonDifferentiableError for the Laplacian.
std::optional<double> critical_bsc_q(const NoiseModel& model);

/// Same rule from raw density values at the origin; `pdf_d2_at_0` may be -inf.
std::optional<double> critical_bsc_q(double pdf_at_0, double pdf_d2_at_0);

/// Location Fisher information of unquantized measurements, I = integral f'^2 / f.
/// Uses the analytic value where one exists; see continuous_fisher_info_quadrature.
double continuous_fisher_info(const NoiseModel& model);

/// Always integrates f'^2 / f numerically. Throws QuadratureError when not integrable to tolerance.
double continuous_fisher_info_quadrature(const NoiseModel& model);

/// Analytic Fisher information, if the family has one.
std::optional<double> continuous_fisher_info_analytic(const NoiseModel& model);

struct RelativeLoss {
  double ratio = 1.0;
  double db = 0.0;
};

enum class FisherRoute { analytic_if_available, quadrature };

/// B(0) * I: loss of the symmetric binary quantizer against continuous measurements.
RelativeLoss relative_loss_at_0(const NoiseModel& model,
                                FisherRoute route = FisherRoute::analytic_if_available);

/// 10 log10(ratio).
double to_db(double ratio);

}  // namespace binquant
