#include "binquant/noise_model.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "binquant/error.hpp"
#include "binquant/special_fn.hpp"
#include "quadrature.hpp"

namespace binquant {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kSqrt2Pi = 2.5066282746310005024;
constexpr double kSqrt2 = std::numbers::sqrt2;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

void require_scale(double value, const char* family, const char* key) {
  require(std::isfinite(value) && value > 0.0,
          std::string(family) + ": " + key + " must be finite and > 0");
}

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

// Standard normal CDF and its inverse, tail-accurate.
double std_normal_cdf(double z) { return 0.5 * special::erfc(-z / kSqrt2); }

// Valid for 0 < x <= 1/2.
double std_normal_lower_quantile(double x) { return -kSqrt2 * special::inv_erfc(2.0 * x); }

}  // namespace

std::string_view family_name(Family family) {
  switch (family) {
    case Family::gaussian: return "gaussian";
    case Family::cauchy: return "cauchy";
    case Family::laplacian: return "laplacian";
    case Family::hybrid: return "hybrid";
    case Family::ggd: return "ggd";
  }
  return "unknown";
}

NoiseModel::NoiseModel(Params params) : params_(params) {
  std::visit(
      Overloaded{
          [&](const Gaussian& m) {
            require_scale(m.delta, "gaussian", "delta");
            norm_ = 1.0 / (m.delta * kSqrtPi);
          },
          [&](const Cauchy& m) {
            require_scale(m.delta, "cauchy", "delta");
            norm_ = 1.0 / (std::numbers::pi * m.delta);
          },
          [&](const Laplacian& m) {
            require_scale(m.delta, "laplacian", "delta");
            norm_ = 1.0 / (2.0 * m.delta);
          },
          [&](const HybridUniformGaussian& m) {
            require(std::isfinite(m.alpha) && m.alpha >= 0.0, "hybrid: alpha must be finite and >= 0");
            require_scale(m.sigma, "hybrid", "sigma");
            normalizer_ = 1.0 + m.alpha / (kSqrt2Pi * m.sigma);
            plateau_ = 1.0 / (normalizer_ * kSqrt2Pi * m.sigma);
            norm_ = plateau_;
          },
          [&](const Ggd& m) {
            require(std::isfinite(m.beta) && m.beta > 1.0,
                    "ggd: beta must be > 1 (first derivative at 0 undefined otherwise)");
            require_scale(m.delta, "ggd", "delta");
            norm_ = m.beta / (2.0 * m.delta * special::gamma(1.0 / m.beta));
          },
      },
      params_);
}

Family NoiseModel::family() const noexcept {
  return static_cast<Family>(params_.index());
}

double NoiseModel::scale() const noexcept {
  return std::visit(Overloaded{
                        [](const HybridUniformGaussian& m) { return 0.5 * m.alpha + m.sigma; },
                        [](const auto& m) { return m.delta; },
                    },
                    params_);
}

double NoiseModel::pdf(double v) const {
  const double a = std::abs(v);
  return std::visit(Overloaded{
                        [&](const Gaussian& m) {
                          const double u = a / m.delta;
                          return norm_ * std::exp(-u * u);
                        },
                        [&](const Cauchy& m) {
                          const double u = a / m.delta;
                          return norm_ / (1.0 + u * u);
                        },
                        [&](const Laplacian& m) { return norm_ * std::exp(-a / m.delta); },
                        [&](const HybridUniformGaussian& m) {
                          const double excess = a - 0.5 * m.alpha;
                          if (excess <= 0.0) return plateau_;
                          const double z = excess / m.sigma;
                          return plateau_ * std::exp(-0.5 * z * z);
                        },
                        [&](const Ggd& m) { return norm_ * std::exp(-std::pow(a / m.delta, m.beta)); },
                    },
                    params_);
}

double NoiseModel::cdf(double v) const {
  if (std::isnan(v)) throw DomainError("cdf: NaN argument");
  if (v == 0.0) return 0.5;
  // Evaluate the lower tail at -|v| and reflect, so cdf(v) + cdf(-v) = 1 to one rounding.
  const double a = std::abs(v);
  const double lower = std::visit(
      Overloaded{
          [&](const Gaussian& m) { return 0.5 * special::erfc(a / m.delta); },
          [&](const Cauchy& m) { return std::atan(m.delta / a) / std::numbers::pi; },
          [&](const Laplacian& m) { return 0.5 * std::exp(-a / m.delta); },
          [&](const HybridUniformGaussian& m) {
            const double half = 0.5 * m.alpha;
            const double tail_mass = 0.5 / normalizer_;
            if (a <= half) return tail_mass + plateau_ * (half - a);
            return std_normal_cdf(-(a - half) / m.sigma) / normalizer_;
          },
          [&](const Ggd& m) {
            return 0.5 * special::reg_upper_inc_gamma(1.0 / m.beta, std::pow(a / m.delta, m.beta));
          },
      },
      params_);
  return v < 0.0 ? lower : 1.0 - lower;
}

double NoiseModel::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("quantile: p must lie in (0, 1), got " + std::to_string(p));
  }
  if (p == 0.5) return 0.0;
  // Solve for the lower-tail point with mass min(p, 1 - p), then reflect.
  const double tail = p < 0.5 ? p : 1.0 - p;
  const double lower_point = std::visit(
      Overloaded{
          [&](const Gaussian& m) { return -m.delta * special::inv_erfc(2.0 * tail); },
          [&](const Cauchy& m) { return -m.delta / std::tan(std::numbers::pi * tail); },
          [&](const Laplacian& m) { return m.delta * std::log(2.0 * tail); },
          [&](const HybridUniformGaussian& m) {
            const double half = 0.5 * m.alpha;
            const double tail_mass = 0.5 / normalizer_;
            if (tail < tail_mass) {
              return -half + m.sigma * std_normal_lower_quantile(tail * normalizer_);
            }
            return -half + (tail - tail_mass) / plateau_;
          },
          [&](const Ggd& m) {
            const double w = special::inv_reg_upper_inc_gamma(1.0 / m.beta, 2.0 * tail);
            return -m.delta * std::pow(w, 1.0 / m.beta);
          },
      },
      params_);
  return p < 0.5 ? lower_point : -lower_point;
}

double NoiseModel::pdf_d1(double v) const {
  const double s = sign_of(v);
  const double a = std::abs(v);
  return std::visit(
      Overloaded{
          [&](const Gaussian& m) { return -2.0 * v / (m.delta * m.delta) * pdf(v); },
          [&](const Cauchy& m) {
            const double u = v / m.delta;
            const double d = 1.0 + u * u;
            return -2.0 * u * norm_ / (m.delta * d * d);
          },
          [&](const Laplacian& m) -> double {
            if (v == 0.0) {
              throw NonDifferentiableError(NonDifferentiableError::Kind::undefined,
                                           "laplacian: density has a kink at 0");
            }
            return -s / m.delta * pdf(v);
          },
          [&](const HybridUniformGaussian& m) {
            const double excess = a - 0.5 * m.alpha;
            if (excess <= 0.0) return 0.0;
            return -s * excess / (m.sigma * m.sigma) * pdf(v);
          },
          [&](const Ggd& m) {
            if (v == 0.0) return 0.0;
            const double u = a / m.delta;
            return -s * m.beta * std::pow(u, m.beta - 1.0) / m.delta * pdf(v);
          },
      },
      params_);
}

double NoiseModel::pdf_d2(double v) const {
  const double a = std::abs(v);
  return std::visit(
      Overloaded{
          [&](const Gaussian& m) {
            const double d2 = m.delta * m.delta;
            return (4.0 * v * v / (d2 * d2) - 2.0 / d2) * pdf(v);
          },
          [&](const Cauchy& m) {
            const double u = v / m.delta;
            const double d = 1.0 + u * u;
            return (6.0 * u * u - 2.0) * norm_ / (m.delta * m.delta * d * d * d);
          },
          [&](const Laplacian& m) -> double {
            if (v == 0.0) {
              throw NonDifferentiableError(NonDifferentiableError::Kind::undefined,
                                           "laplacian: density has a kink at 0");
            }
            return pdf(v) / (m.delta * m.delta);
          },
          [&](const HybridUniformGaussian& m) -> double {
            const double half = 0.5 * m.alpha;
            if (m.alpha > 0.0 && a == half) {
              throw NonDifferentiableError(NonDifferentiableError::Kind::undefined,
                                           "hybrid: second derivative jumps at +-alpha/2");
            }
            const double excess = a - half;
            if (m.alpha > 0.0 && excess < 0.0) return 0.0;
            const double s2 = m.sigma * m.sigma;
            return (excess * excess / (s2 * s2) - 1.0 / s2) * pdf(v);
          },
          [&](const Ggd& m) -> double {
            if (v == 0.0) {
              if (m.beta < 2.0) {
                throw NonDifferentiableError(NonDifferentiableError::Kind::negative_infinite,
                                             "ggd: second derivative is -inf at 0 for beta < 2");
              }
              if (m.beta > 2.0) return 0.0;
              return -2.0 * pdf(0.0) / (m.delta * m.delta);
            }
            const double u = a / m.delta;
            const double b = m.beta;
            return (b * b * std::pow(u, 2.0 * b - 2.0) - b * (b - 1.0) * std::pow(u, b - 2.0)) *
                   pdf(v) / (m.delta * m.delta);
          },
      },
      params_);
}

double NoiseModel::variance() const {
  return std::visit(
      Overloaded{
          [](const Gaussian& m) { return 0.5 * m.delta * m.delta; },
          [](const Cauchy&) -> double {
            throw UndefinedMomentError("cauchy: variance is undefined");
          },
          [](const Laplacian& m) { return 2.0 * m.delta * m.delta; },
          [&](const HybridUniformGaussian& m) {
            const double inf = std::numeric_limits<double>::infinity();
            const double half = 0.5 * m.alpha;
            const std::array<double, 4> points = {-inf, -half, half, inf};
            const auto second_moment = [&](double v) { return v * v * pdf(v); };
            return detail::integrate(second_moment, points, 1e-12);
          },
          [](const Ggd& m) {
            return m.delta * m.delta * special::gamma(3.0 / m.beta) / special::gamma(1.0 / m.beta);
          },
      },
      params_);
}

std::vector<double> NoiseModel::sample(Seed seed, std::size_t n) const {
  std::vector<double> out(n);
  Engine engine = make_engine(seed);
  fill(engine, out);
  return out;
}

void NoiseModel::fill(Engine& engine, std::span<double> out) const {
  std::visit(
      Overloaded{
          [&](const Gaussian& m) {
            std::normal_distribution<double> normal(0.0, m.delta / kSqrt2);
            for (double& x : out) x = normal(engine);
          },
          [&](const Cauchy& m) {
            for (double& x : out) {
              x = m.delta * std::tan(std::numbers::pi * (uniform_open01(engine) - 0.5));
            }
          },
          [&](const Laplacian& m) {
            for (double& x : out) {
              const double u = uniform_open01(engine);
              x = u < 0.5 ? m.delta * std::log(2.0 * u) : -m.delta * std::log(2.0 * (1.0 - u));
            }
          },
          [&](const HybridUniformGaussian& m) {
            // Component selection: left tail, plateau, right tail.
            std::normal_distribution<double> normal(0.0, m.sigma);
            const double half = 0.5 * m.alpha;
            const double tail_mass = 0.5 / normalizer_;
            const double plateau_mass = m.alpha * plateau_;
            for (double& x : out) {
              const double u = uniform_open01(engine);
              if (u < tail_mass) {
                x = -half - std::abs(normal(engine));
              } else if (u < tail_mass + plateau_mass) {
                x = -half + m.alpha * uniform_open01(engine);
              } else {
                x = half + std::abs(normal(engine));
              }
            }
          },
          [&](const Ggd& m) {
            // Gamma-power method: |V / delta|^beta ~ Gamma(1/beta, 1).
            std::gamma_distribution<double> gamma(1.0 / m.beta, 1.0);
            const double inv_beta = 1.0 / m.beta;
            for (double& x : out) {
              const double magnitude = m.delta * std::pow(gamma(engine), inv_beta);
              x = (engine() >> 63) != 0 ? -magnitude : magnitude;
            }
          },
      },
      params_);
}

void NoiseModel::fill_by_inversion(Engine& engine, std::span<double> out) const {
  for (double& x : out) x = quantile(uniform_open01(engine));
}

}  // namespace binquant
