#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "binquant/channel.hpp"
#include "binquant/noise_model.hpp"

namespace binquant {

/// Quantizer outputs i_k = sign(Y_k - tau0) in {-1, +1} together with the threshold used.
struct BinarySample {
  std::vector<std::int8_t> bits;
  double tau0 = 0.0;

  /// Throws EmptyInputError when empty, DomainError for any element other than -1 or +1.
  void validate() const;
};

enum class SaturationDirection : std::int8_t { negative = -1, positive = 1 };

/// The estimate diverged: every received bit pointed the same way (or the channel clamp engaged).
struct Saturated {
  SaturationDirection direction;

  friend bool operator==(const Saturated&, const Saturated&) = default;
};

struct EstimateResult {
  std::variant<double, Saturated> x_hat;
  double frequency = 0.0;  // p_hat, or r_hat on the channel path
  bool clamped = false;    // channel path: (r_hat - q) / (1 - 2q) was clipped to [0, 1]

  bool saturated() const noexcept { return std::holds_alternative<Saturated>(x_hat); }
  std::optional<double> value() const noexcept {
    if (const double* v = std::get_if<double>(&x_hat)) return *v;
    return std::nullopt;
  }
};

/// Fraction of -1 outputs, count / N in a single rounding. Throws EmptyInputError.
double estimate_p(std::span<const std::int8_t> bits);

/// tau0 - F^{-1}(p_hat).
EstimateResult estimate_x(const NoiseModel& model, const BinarySample& sample);

/// tau0 - F^{-1}(clip((r_hat - q) / (1 - 2q), 0, 1)) for bits received through a BSC.
EstimateResult estimate_x_bsc(const NoiseModel& model, const ChannelModel& channel,
                              const BinarySample& sample);

/// Frequency-level entry points; `frequency` must lie in [0, 1].
EstimateResult estimate_x_from_frequency(const NoiseModel& model, double p_hat, double tau0);
EstimateResult estimate_x_bsc_from_frequency(const NoiseModel& model, const ChannelModel& channel,
                                             double r_hat, double tau0);

/// Count-level entry point used by the simulator: `minus_count` of `n` bits were -1.
EstimateResult estimate_x_from_counts(const NoiseModel& model, const ChannelModel& channel,
                                      std::size_t minus_count, std::size_t n, double tau0);

}  // namespace binquant
