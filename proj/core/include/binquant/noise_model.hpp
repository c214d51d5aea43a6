#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "binquant/rng.hpp"

namespace binquant {

// Parameter sets of the supported symmetric unimodal noise families.
// All densities are even, strictly positive and nonincreasing on v > 0.

/// f(v) = exp(-v^2 / delta^2) / (delta sqrt(pi)); note the variance is delta^2 / 2.
struct Gaussian {
  double delta = 1.0;
};

/// f(v) = 1 / (pi delta (1 + (v / delta)^2)).
struct Cauchy {
  double delta = 1.0;
};

/// f(v) = exp(-|v / delta|) / (2 delta).
struct Laplacian {
  double delta = 1.0;
};

/// Flat on [-alpha/2, alpha/2] with Gaussian tails of standard deviation sigma,
/// normalized by C = 1 + alpha / (sqrt(2 pi) sigma).
struct HybridUniformGaussian {
  double alpha = 1.0;
  double sigma = 1.0;
};

/// Generalized Gaussian f(v) = beta / (2 delta Gamma(1/beta)) exp(-|v / delta|^beta), beta > 1.
struct Ggd {
  double beta = 2.0;
  double delta = 1.0;
};

enum class Family { gaussian, cauchy, laplacian, hybrid, ggd };

std::string_view family_name(Family family);

/// Immutable noise distribution. Construction validates parameters and throws DomainError.
class NoiseModel {
 public:
  using Params = std::variant<Gaussian, Cauchy, Laplacian, HybridUniformGaussian, Ggd>;

  explicit NoiseModel(Params params);

  const Params& params() const noexcept { return params_; }
  Family family() const noexcept;

  /// Characteristic width: delta for the scale families, alpha/2 + sigma for the hybrid.
  double scale() const noexcept;

  double pdf(double v) const;
  double cdf(double v) const;

  /// Inverse CDF on (0, 1); throws DomainError otherwise.
  double quantile(double p) const;

  /// First and second derivatives of the density. Throw NonDifferentiableError at kinks
  /// (Laplacian at 0, hybrid corners for the second derivative) and where the second
  /// derivative diverges (GGD with beta < 2 at 0).
  double pdf_d1(double v) const;
  double pdf_d2(double v) const;

  /// Throws UndefinedMomentError for Cauchy.
  double variance() const;

  /// n i.i.d. draws from the stream identified by `seed`.
  std::vector<double> sample(Seed seed, std::size_t n) const;

  /// Fills `out` with i.i.d. draws from `engine` (component/gamma-power samplers).
  void fill(Engine& engine, std::span<double> out) const;

  /// Inverse-transform sampler; kept as an independent cross-check of `fill`.
  void fill_by_inversion(Engine& engine, std::span<double> out) const;

  /// Density value at the hybrid plateau (hybrid only).
  double hybrid_plateau() const noexcept { return plateau_; }
  /// Normalization constant C of the hybrid (hybrid only).
  double hybrid_normalizer() const noexcept { return normalizer_; }

 private:
  Params params_;
  double norm_ = 0.0;        // leading constant of the density
  double plateau_ = 0.0;     // hybrid: 1 / (C sqrt(2 pi) sigma)
  double normalizer_ = 1.0;  // hybrid: C
};

}  // namespace binquant
