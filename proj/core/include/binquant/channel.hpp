#pragma once

namespace binquant {

/// Binary symmetric channel: each transmitted bit flips sign with probability q in [0, 1/2).
class ChannelModel {
 public:
  /// Throws DomainError unless 0 <= q < 1/2.
  explicit ChannelModel(double q = 0.0);

  static ChannelModel perfect() { return ChannelModel(0.0); }

  double q() const noexcept { return q_; }
  bool is_perfect() const noexcept { return q_ == 0.0; }

  /// Probability of receiving -1 when the quantizer emits -1 with probability p.
  double received_minus_probability(double p) const noexcept { return q_ + (1.0 - 2.0 * q_) * p; }

  /// q(1 - q) / (1 - 2q)^2, the weight of the 1/f^2 term added by the channel.
  double excess_factor() const noexcept;

 private:
  double q_;
};

}  // namespace binquant
