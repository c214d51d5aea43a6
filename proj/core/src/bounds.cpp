#include "binquant/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "binquant/error.hpp"
#include "binquant/model_text.hpp"
#include "binquant/special_fn.hpp"
#include "quadrature.hpp"

namespace binquant {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

double require_positive_bound(double value, const char* what, double eps) {
  if (!std::isfinite(value) || !(value > 0.0)) {
    throw OverflowError(std::string(what) + ": bound not representable at eps=" + std::to_string(eps));
  }
  return value;
}

}  // namespace

ChannelModel::ChannelModel(double q) : q_(q) {
  if (!(q >= 0.0 && q < 0.5)) {
    throw DomainError("channel: flip probability q must lie in [0, 1/2), got " + std::to_string(q));
  }
}

double ChannelModel::excess_factor() const noexcept {
  const double d = 1.0 - 2.0 * q_;
  return q_ * (1.0 - q_) / (d * d);
}

double b_of_eps(const NoiseModel& model, double eps) {
  if (!std::isfinite(eps)) throw DomainError("b_of_eps: eps must be finite");
  const double a = std::abs(eps);
  const double f = model.pdf(a);
  const double lower = model.cdf(-a);
  const double upper = model.cdf(a);
  if (!(f > 0.0) || !(lower > 0.0)) {
    throw OverflowError("b_of_eps: density or tail mass underflows at eps=" + std::to_string(eps));
  }
  return require_positive_bound((lower / f) * (upper / f), "b_of_eps", eps);
}

double b_laplacian_closed(double delta, double eps) {
  if (!(delta > 0.0)) throw DomainError("b_laplacian_closed: delta must be > 0");
  return require_positive_bound(delta * delta * (2.0 * std::exp(std::abs(eps / delta)) - 1.0),
                                "b_laplacian_closed", eps);
}

double b_ggd_closed(double beta, double delta, double eps) {
  if (!(beta > 1.0)) throw DomainError("b_ggd_closed: beta must be > 1");
  if (!(delta > 0.0)) throw DomainError("b_ggd_closed: delta must be > 0");
  const double shape = 1.0 / beta;
  const double w = std::pow(std::abs(eps / delta), beta);
  const double g = special::gamma(shape);
  const double lower_ratio = special::reg_lower_inc_gamma(shape, w);  // gamma(1/beta, w) / Gamma(1/beta)
  // 1 - lower_ratio^2, factored so the upper tail keeps its relative precision.
  const double one_minus_sq = special::reg_upper_inc_gamma(shape, w) * (1.0 + lower_ratio);
  const double e = std::exp(w);
  const double b = (delta * delta * g * g / (beta * beta)) * (one_minus_sq * e) * e;
  return require_positive_bound(b, "b_ggd_closed", eps);
}

double b_bsc(const NoiseModel& model, const ChannelModel& channel, double eps) {
  const double b = b_of_eps(model, eps);
  if (channel.is_perfect()) return b;
  const double f = model.pdf(eps);
  return require_positive_bound(b + channel.excess_factor() / f / f, "b_bsc", eps);
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("grid: bounds must be finite");
  if (points == 0) throw DomainError("grid: need at least one point");
  if (points == 1) {
    if (lo != hi) throw DomainError("grid: a single point requires lo == hi");
    return {lo};
  }
  if (!(lo < hi)) throw DomainError("grid: lo must be < hi when points > 1");
  std::vector<double> out(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    out[i] = lo + step * static_cast<double>(i);
  }
  out.back() = hi;
  return out;
}

BoundCurve make_bound_curve(const NoiseModel& model, const ChannelModel& channel, std::size_t n_samples,
                            std::span<const double> eps_grid) {
  if (n_samples == 0) throw DomainError("bound curve: n_samples must be >= 1");
  if (eps_grid.empty()) throw DomainError("bound curve: empty epsilon grid");
  BoundCurve curve;
  curve.model_desc = to_string(model);
  curve.n_samples = n_samples;
  curve.channel_q = channel.q();
  curve.rows.reserve(eps_grid.size());
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    if (i > 0 && !(eps_grid[i] > eps_grid[i - 1])) {
      throw DomainError("bound curve: epsilon grid must be strictly increasing");
    }
    const double b = b_bsc(model, channel, eps_grid[i]);
    curve.rows.push_back({eps_grid[i], b, b / static_cast<double>(n_samples)});
  }
  return curve;
}

std::string_view curvature_name(Curvature c) {
  switch (c) {
    case Curvature::local_min: return "local_min";
    case Curvature::local_max: return "local_max";
    case Curvature::flat_or_higher_order: return "flat_or_higher_order";
    case Curvature::underivable: return "underivable";
  }
  return "unknown";
}

CurvatureAtZero b_second_deriv_at_0(const NoiseModel& model) {
  const double f0 = model.pdf(0.0);
  double f2 = 0.0;
  try {
    f2 = model.pdf_d2(0.0);
  } catch (const NonDifferentiableError& e) {
    if (e.kind() == NonDifferentiableError::Kind::negative_infinite) {
      return {std::nullopt, Curvature::local_min, true};
    }
    return {std::nullopt, Curvature::underivable, false};
  }
  const double value = -0.5 * f2 / (f0 * f0 * f0) - 2.0;
  Curvature c = Curvature::flat_or_higher_order;
  if (value > 0.0) c = Curvature::local_min;
  if (value < 0.0) c = Curvature::local_max;
  return {value, c, false};
}

SymmetryVerdict symmetry_condition(const NoiseModel& model, const ChannelModel& channel) {
  SymmetryVerdict v;
  v.q = channel.q();
  v.pdf_at_0 = model.pdf(0.0);
  const double f0_cubed = v.pdf_at_0 * v.pdf_at_0 * v.pdf_at_0;
  v.rhs = 4.0 * f0_cubed;
  try {
    v.pdf_d2_at_0 = model.pdf_d2(0.0);
  } catch (const NonDifferentiableError& e) {
    if (e.kind() == NonDifferentiableError::Kind::negative_infinite) {
      v.pdf_d2_diverges = true;
      v.condition_holds = true;
      v.classification = Curvature::local_min;
    } else {
      v.classification = Curvature::underivable;
    }
    return v;
  }
  const double d = 1.0 - 2.0 * channel.q();
  v.lhs = -*v.pdf_d2_at_0 / (d * d);
  v.condition_holds = *v.lhs > v.rhs;
  // d^2 B'/d eps^2 at 0 = (lhs - rhs) / (2 f(0)^3)
  v.second_deriv_at_0 = (*v.lhs - v.rhs) / (2.0 * f0_cubed);
  if (*v.lhs > v.rhs) {
    v.classification = Curvature::local_min;
  } else if (*v.lhs < v.rhs) {
    v.classification = Curvature::local_max;
  } else {
    v.classification = Curvature::flat_or_higher_order;
  }
  return v;
}

std::optional<double> critical_bsc_q(double pdf_at_0, double pdf_d2_at_0) {
  if (!(pdf_at_0 > 0.0)) throw DomainError("critical_bsc_q: density at 0 must be > 0");
  if (std::isnan(pdf_d2_at_0)) throw DomainError("critical_bsc_q: second derivative is NaN");
  const double rhs = 4.0 * pdf_at_0 * pdf_at_0 * pdf_at_0;
  if (-pdf_d2_at_0 > rhs) return 0.0;
  if (pdf_d2_at_0 >= 0.0) return std::nullopt;
  return 0.5 * (1.0 - std::sqrt(-pdf_d2_at_0 / rhs));
}

std::optional<double> critical_bsc_q(const NoiseModel& model) {
  const double f0 = model.pdf(0.0);
  double f2 = 0.0;
  try {
    f2 = model.pdf_d2(0.0);
  } catch (const NonDifferentiableError& e) {
    if (e.kind() == NonDifferentiableError::Kind::negative_infinite) {
      return critical_bsc_q(f0, -std::numeric_limits<double>::infinity());
    }
    throw;
  }
  return critical_bsc_q(f0, f2);
}

std::optional<double> continuous_fisher_info_analytic(const NoiseModel& model) {
  return std::visit(
      Overloaded{
          [](const Gaussian& m) -> std::optional<double> { return 2.0 / (m.delta * m.delta); },
          [](const Cauchy& m) -> std::optional<double> { return 0.5 / (m.delta * m.delta); },
          [](const Laplacian& m) -> std::optional<double> { return 1.0 / (m.delta * m.delta); },
          [&](const HybridUniformGaussian& m) -> std::optional<double> {
            return 1.0 / (model.hybrid_normalizer() * m.sigma * m.sigma);
          },
          [](const Ggd& m) -> std::optional<double> {
            return m.beta * m.beta * special::gamma(2.0 - 1.0 / m.beta) /
                   (m.delta * m.delta * special::gamma(1.0 / m.beta));
          },
      },
      model.params());
}

double continuous_fisher_info_quadrature(const NoiseModel& model) {
  const auto integrand = [&](double v) {
    if (v == 0.0) return 0.0;  // Laplacian kink; a single point carries no mass
    const double f = model.pdf(v);
    if (!(f > 0.0)) return 0.0;
    const double d1 = model.pdf_d1(v);
    return d1 * d1 / f;
  };
  const double inf = std::numeric_limits<double>::infinity();
  // Breakpoints at the hybrid corner and at geometric multiples of the scale keep the sharp
  // shoulder of large-shape GGD integrands on finite pieces; the last piece carries the tail.
  std::vector<double> points = {0.0};
  if (const auto* h = std::get_if<HybridUniformGaussian>(&model.params()); h && h->alpha > 0.0) {
    points.push_back(0.5 * h->alpha);
  }
  for (double k : {0.5, 1.0, 2.0, 4.0, 16.0, 50.0}) points.push_back(k * model.scale());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  points.push_back(inf);
  // Even integrand: integrate the positive half and double.
  return 2.0 * detail::integrate(integrand, points, 0.5e-10);
}

double continuous_fisher_info(const NoiseModel& model) {
  if (auto analytic = continuous_fisher_info_analytic(model)) return *analytic;
  return continuous_fisher_info_quadrature(model);
}

double to_db(double ratio) { return 10.0 * std::log10(ratio); }

RelativeLoss relative_loss_at_0(const NoiseModel& model, FisherRoute route) {
  const double info = route == FisherRoute::quadrature ? continuous_fisher_info_quadrature(model)
                                                       : continuous_fisher_info(model);
  const double ratio = b_of_eps(model, 0.0) * info;
  return {ratio, to_db(ratio)};
}

}  // namespace binquant
