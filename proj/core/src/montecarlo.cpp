#include "binquant/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include "binquant/bounds.hpp"
#include "binquant/error.hpp"
#include "binquant/model_text.hpp"

namespace binquant {

namespace {

struct BlockOutcome {
  bool saturated = false;
  double squared_error = 0.0;
};

// Runs body(i) for i in [0, count) on up to `threads` workers.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  const unsigned workers =
      static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr failure;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count && !failed.load(); i = next++) {
          try {
            body(i);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

SaturationPolicy parse_saturation_policy(std::string_view text) {
  if (text == "exclude_and_count") return SaturationPolicy::exclude_and_count();
  constexpr std::string_view prefix = "error_if_over:";
  if (text.starts_with(prefix)) {
    const double fraction = parse_double(text.substr(prefix.size()), "saturation_policy");
    if (!(fraction >= 0.0 && fraction <= 1.0)) {
      throw ParseError("saturation_policy", "saturation_policy: fraction must lie in [0, 1]");
    }
    return SaturationPolicy::error_if_over(fraction);
  }
  throw ParseError("saturation_policy", "saturation_policy: expected 'exclude_and_count' or "
                                        "'error_if_over:<fraction>', got '" + std::string(text) + "'");
}

std::string to_string(const SaturationPolicy& policy) {
  if (policy.kind == SaturationPolicyKind::exclude_and_count) return "exclude_and_count";
  return "error_if_over:" + format_double(policy.max_fraction);
}

void ExperimentSpec::validate() const {
  if (n_samples < 1) throw DomainError("experiment: n_samples must be >= 1");
  if (n_runs < 1) throw DomainError("experiment: n_runs must be >= 1");
  if (eps_grid.empty()) throw DomainError("experiment: eps_grid must be nonempty");
  if (!std::isfinite(true_x)) throw DomainError("experiment: true_x must be finite");
  for (const double e : eps_grid) {
    if (!std::isfinite(e)) throw DomainError("experiment: eps_grid entries must be finite");
  }
  if (!(saturation_policy.max_fraction >= 0.0 && saturation_policy.max_fraction <= 1.0)) {
    throw DomainError("experiment: saturation fraction must lie in [0, 1]");
  }
}

std::size_t apply_bsc(std::span<std::int8_t> bits, const ChannelModel& channel, Engine& engine) {
  if (channel.is_perfect()) return 0;
  std::size_t flips = 0;
  for (std::int8_t& b : bits) {
    if (uniform_open01(engine) < channel.q()) {
      b = static_cast<std::int8_t>(-b);
      ++flips;
    }
  }
  return flips;
}

BinarySample simulate_block(const NoiseModel& model, const ChannelModel& channel, double true_x,
                            double tau0, std::size_t n, Seed seed) {
  if (n == 0) throw DomainError("simulate_block: n must be >= 1");
  Engine engine = make_engine(seed);
  std::vector<double> noise(n);
  model.fill(engine, noise);
  BinarySample sample;
  sample.tau0 = tau0;
  sample.bits.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    sample.bits[k] = (true_x + noise[k]) - tau0 > 0.0 ? std::int8_t{1} : std::int8_t{-1};
  }
  apply_bsc(sample.bits, channel, engine);
  return sample;
}

EstimateResult run_block(const NoiseModel& model, const ChannelModel& channel, double true_x, double tau0,
                         std::size_t n, Seed seed) {
  return estimate_x_bsc(model, channel, simulate_block(model, channel, true_x, tau0, n, seed));
}

SimReport run_experiment(const ExperimentSpec& spec, RunOptions options) {
  spec.validate();
  const std::size_t n_eps = spec.eps_grid.size();
  const std::size_t runs = spec.n_runs;

  // One pre-allocated slot per (epsilon, run); folded in index order afterwards.
  std::vector<BlockOutcome> slots(n_eps * runs);
  parallel_for(slots.size(), options.threads, [&](std::size_t i) {
    const std::size_t e = i / runs;
    const std::size_t r = i % runs;
    const double tau0 = spec.true_x + spec.eps_grid[e];
    const EstimateResult est = run_block(spec.model, spec.channel, spec.true_x, tau0, spec.n_samples,
                                         Seed{spec.master_seed, static_cast<std::uint64_t>(r)});
    if (const auto v = est.value()) {
      const double err = *v - spec.true_x;
      slots[i] = {false, err * err};
    } else {
      slots[i] = {true, 0.0};
    }
  });

  SimReport report{spec, std::string(kRngAlgorithm), {}};
  report.rows.reserve(n_eps);
  for (std::size_t e = 0; e < n_eps; ++e) {
    SimRow row;
    row.epsilon = spec.eps_grid[e];
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t r = 0; r < runs; ++r) {
      const BlockOutcome& o = slots[e * runs + r];
      if (o.saturated) {
        ++row.saturated_runs;
        continue;
      }
      ++row.runs_used;
      sum += o.squared_error;
      sum_sq += o.squared_error * o.squared_error;
    }
    if (row.runs_used > 0) {
      const double used = static_cast<double>(row.runs_used);
      row.mse = sum / used;
      const double var = row.runs_used > 1 ? std::max(0.0, (sum_sq - used * row.mse * row.mse) / (used - 1.0)) : 0.0;
      row.mse_std_error = std::sqrt(var / used);
    } else {
      row.mse = std::numeric_limits<double>::quiet_NaN();
    }
    row.crb = b_bsc(spec.model, spec.channel, row.epsilon) / static_cast<double>(spec.n_samples);

    const double fraction = static_cast<double>(row.saturated_runs) / static_cast<double>(runs);
    if (spec.saturation_policy.kind == SaturationPolicyKind::error_if_over &&
        fraction > spec.saturation_policy.max_fraction) {
      throw SaturationPolicyError("saturated blocks at eps=" + format_double(row.epsilon) + ": " +
                                  std::to_string(row.saturated_runs) + " of " + std::to_string(runs) +
                                  " exceeds fraction " + format_double(spec.saturation_policy.max_fraction));
    }
    report.rows.push_back(row);
  }
  return report;
}

EfficiencyReport efficiency_check(const ExperimentSpec& spec, double eps, RunOptions options) {
  ExperimentSpec single = spec;
  single.eps_grid = {eps};
  single.saturation_policy = SaturationPolicy::exclude_and_count();
  const SimReport report = run_experiment(single, options);
  const SimRow& row = report.rows.front();

  EfficiencyReport out;
  out.epsilon = eps;
  out.saturated_fraction = static_cast<double>(row.saturated_runs) / static_cast<double>(spec.n_runs);
  if (out.saturated_fraction >= 0.01) {
    throw DomainError("efficiency_check: " + std::to_string(row.saturated_runs) +
                      " saturated blocks; requires a non-saturating regime (< 1%)");
  }
  out.mse = row.mse;
  out.crb = row.crb;
  out.ratio = row.mse / row.crb;
  out.ratio_std_error = row.mse_std_error / row.crb;
  constexpr double kMaxStdError = 0.25 * (kEfficiencyBandHi - kEfficiencyBandLo);
  if (out.ratio_std_error > kMaxStdError) {
    throw InsufficientRunsError("efficiency_check: ratio standard error " +
                                std::to_string(out.ratio_std_error) + " exceeds " +
                                std::to_string(kMaxStdError) + "; increase n_runs");
  }
  out.in_band = out.ratio >= kEfficiencyBandLo && out.ratio <= kEfficiencyBandHi;
  return out;
}

}  // namespace binquant
