#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "binquant/channel.hpp"
#include "binquant/estimation.hpp"
#include "binquant/noise_model.hpp"
#include "binquant/rng.hpp"

namespace binquant {

enum class SaturationPolicyKind { exclude_and_count, error_if_over };

/// How saturated blocks (infinite estimates) are treated. Both kinds exclude saturated blocks
/// from the MSE and count them; error_if_over additionally fails when their fraction at any
/// epsilon exceeds `max_fraction`.
struct SaturationPolicy {
  SaturationPolicyKind kind = SaturationPolicyKind::error_if_over;
  double max_fraction = 0.01;

  static SaturationPolicy exclude_and_count() { return {SaturationPolicyKind::exclude_and_count, 1.0}; }
  static SaturationPolicy error_if_over(double fraction) {
    return {SaturationPolicyKind::error_if_over, fraction};
  }
};

/// Text form: `exclude_and_count` or `error_if_over:<fraction>`.
SaturationPolicy parse_saturation_policy(std::string_view text);
std::string to_string(const SaturationPolicy& policy);

struct ExperimentSpec {
  NoiseModel model;
  ChannelModel channel;
  double true_x = 0.0;
  std::vector<double> eps_grid;  // thresholds tau0 = true_x + eps
  std::size_t n_samples = 500;   // N, bits per block
  std::size_t n_runs = 1000;     // R, blocks per epsilon
  std::uint64_t master_seed = 1;  // block r uses stream Seed{master_seed, r}
  SaturationPolicy saturation_policy;

  void validate() const;
};

struct SimRow {
  double epsilon = 0.0;
  double mse = 0.0;  // NaN only when every block saturated
  std::size_t runs_used = 0;
  std::size_t saturated_runs = 0;
  double crb = 0.0;        // b_bsc(model, channel, eps) / N
  double mse_std_error = 0.0;
};

struct SimReport {
  ExperimentSpec spec;
  std::string rng_algorithm;
  std::vector<SimRow> rows;
};

struct RunOptions {
  unsigned threads = 1;
};

/// Draws one block: Y_k = true_x + V_k, i_k = sign(Y_k - tau0) with ties mapped to -1,
/// then independent sign flips with probability q.
BinarySample simulate_block(const NoiseModel& model, const ChannelModel& channel, double true_x,
                            double tau0, std::size_t n, Seed seed);

/// Flips each bit independently with probability q; returns the number of flips.
std::size_t apply_bsc(std::span<std::int8_t> bits, const ChannelModel& channel, Engine& engine);

/// One block through the channel-aware estimator.
EstimateResult run_block(const NoiseModel& model, const ChannelModel& channel, double true_x, double tau0,
                         std::size_t n, Seed seed);

/// R blocks per epsilon, MSE against true_x over non-saturated blocks. Deterministic for a fixed
/// spec regardless of `options.threads`. Throws SaturationPolicyError per the policy.
SimReport run_experiment(const ExperimentSpec& spec, RunOptions options = {});

struct EfficiencyReport {
  double epsilon = 0.0;
  double mse = 0.0;
  double crb = 0.0;
  double ratio = 0.0;            // MSE / CRB
  double ratio_std_error = 0.0;  // Monte Carlo standard error of the ratio
  double saturated_fraction = 0.0;
  bool in_band = false;          // ratio within [band_lo, band_hi]
};

inline constexpr double kEfficiencyBandLo = 0.9;
inline constexpr double kEfficiencyBandHi = 1.1;

/// MSE / CRB at a single epsilon using the spec's model, channel, N, R and seed.
/// Throws DomainError when 1% or more of the blocks saturate and InsufficientRunsError when the
/// ratio's standard error exceeds half of the band's half-width.
EfficiencyReport efficiency_check(const ExperimentSpec& spec, double eps, RunOptions options = {});

}  // namespace binquant
