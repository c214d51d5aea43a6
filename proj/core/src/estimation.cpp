#include "binquant/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "binquant/error.hpp"

namespace binquant {

namespace {

// Saturation is decided on the exact argument of F^{-1}: 0 sends the estimate to +inf, 1 to -inf.
EstimateResult invert(const NoiseModel& model, double argument, double frequency, double tau0,
                      bool clamped) {
  EstimateResult r;
  r.frequency = frequency;
  r.clamped = clamped;
  if (argument <= 0.0) {
    r.x_hat = Saturated{SaturationDirection::positive};
  } else if (argument >= 1.0) {
    r.x_hat = Saturated{SaturationDirection::negative};
  } else {
    r.x_hat = tau0 - model.quantile(argument);
  }
  return r;
}

void require_frequency(double f) {
  if (!(f >= 0.0 && f <= 1.0)) {
    throw DomainError("estimate: frequency must lie in [0, 1], got " + std::to_string(f));
  }
}

std::size_t count_minus(const BinarySample& sample) {
  sample.validate();
  return static_cast<std::size_t>(std::count(sample.bits.begin(), sample.bits.end(), std::int8_t{-1}));
}

}  // namespace

void BinarySample::validate() const {
  if (bits.empty()) throw EmptyInputError("binary sample: no bits");
  for (const std::int8_t b : bits) {
    if (b != 1 && b != -1) {
      throw DomainError("binary sample: bits must be -1 or +1, got " + std::to_string(b));
    }
  }
}

double estimate_p(std::span<const std::int8_t> bits) {
  if (bits.empty()) throw EmptyInputError("estimate_p: no bits");
  std::size_t minus = 0;
  for (const std::int8_t b : bits) {
    if (b == -1) {
      ++minus;
    } else if (b != 1) {
      throw DomainError("estimate_p: bits must be -1 or +1");
    }
  }
  return static_cast<double>(minus) / static_cast<double>(bits.size());
}

EstimateResult estimate_x_from_frequency(const NoiseModel& model, double p_hat, double tau0) {
  require_frequency(p_hat);
  return invert(model, p_hat, p_hat, tau0, false);
}

EstimateResult estimate_x_bsc_from_frequency(const NoiseModel& model, const ChannelModel& channel,
                                             double r_hat, double tau0) {
  require_frequency(r_hat);
  if (channel.is_perfect()) return estimate_x_from_frequency(model, r_hat, tau0);
  const double q = channel.q();
  double argument = (r_hat - q) / (1.0 - 2.0 * q);
  bool clamped = false;
  if (argument < 0.0) {
    argument = 0.0;
    clamped = true;
  } else if (argument > 1.0) {
    argument = 1.0;
    clamped = true;
  }
  return invert(model, argument, r_hat, tau0, clamped);
}

EstimateResult estimate_x_from_counts(const NoiseModel& model, const ChannelModel& channel,
                                      std::size_t minus_count, std::size_t n, double tau0) {
  if (n == 0) throw EmptyInputError("estimate: no bits");
  if (minus_count > n) throw DomainError("estimate: minus_count exceeds n");
  const double frequency = static_cast<double>(minus_count) / static_cast<double>(n);
  return estimate_x_bsc_from_frequency(model, channel, frequency, tau0);
}

EstimateResult estimate_x(const NoiseModel& model, const BinarySample& sample) {
  return estimate_x_from_counts(model, ChannelModel::perfect(), count_minus(sample), sample.bits.size(),
                                sample.tau0);
}

EstimateResult estimate_x_bsc(const NoiseModel& model, const ChannelModel& channel,
                              const BinarySample& sample) {
  return estimate_x_from_counts(model, channel, count_minus(sample), sample.bits.size(), sample.tau0);
}

}  // namespace binquant
