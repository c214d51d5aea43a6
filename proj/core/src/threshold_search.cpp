#include "binquant/threshold_search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "binquant/bounds.hpp"
#include "binquant/error.hpp"

namespace binquant {

namespace {

constexpr double kInvPhi = 0.61803398874989484820;  // 1 / golden ratio

double objective(const NoiseModel& model, const ChannelModel& channel, double eps) {
  try {
    return b_bsc(model, channel, eps);
  } catch (const OverflowError&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

void SearchSpec::validate() const {
  if (!std::isfinite(eps_lo) || !std::isfinite(eps_hi) || !(eps_lo < eps_hi)) {
    throw DomainError("search: need finite eps_lo < eps_hi");
  }
  if (grid_points < 3) throw DomainError("search: grid_points must be >= 3");
  if (!(refine_tol > 0.0)) throw DomainError("search: refine_tol must be > 0");
}

SearchSpec SearchSpec::default_for(const NoiseModel& model) {
  SearchSpec s;
  s.eps_lo = 0.0;
  s.eps_hi = 6.0 * model.scale();
  return s;
}

OptimumReport find_optimal_eps(const NoiseModel& model, const ChannelModel& channel,
                               const SearchSpec& spec) {
  spec.validate();

  // Fold onto the nonnegative half-line.
  double lo = spec.eps_lo;
  double hi = spec.eps_hi;
  double sign = 1.0;
  if (hi <= 0.0) {
    lo = -spec.eps_hi;
    hi = -spec.eps_lo;
    sign = -1.0;
  } else if (lo < 0.0) {
    hi = std::max(-lo, hi);
    lo = 0.0;
  }
  const auto f = [&](double e) { return objective(model, channel, e); };

  // Coarse scan; strict comparison keeps the smallest |eps| on ties.
  const std::size_t n = spec.grid_points;
  const double step = (hi - lo) / static_cast<double>(n - 1);
  const auto node = [&](std::size_t i) { return i + 1 == n ? hi : lo + step * static_cast<double>(i); };
  std::size_t best = 0;
  double best_value = f(node(0));
  for (std::size_t i = 1; i < n; ++i) {
    const double value = f(node(i));
    if (value < best_value) {
      best_value = value;
      best = i;
    }
  }
  if (!std::isfinite(best_value)) {
    throw OverflowError("search: bound overflows everywhere on the bracket");
  }

  // Golden-section refinement on the two cells around the best node.
  double a = node(best == 0 ? 0 : best - 1);
  double b = node(std::min(best + 1, n - 1));
  OptimumReport report;
  report.refine_bracket = b - a;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  int iterations = 0;
  while (b - a > spec.refine_tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
    ++iterations;
  }
  report.refine_iterations = iterations;

  double eps = 0.5 * (a + b);
  double value = f(eps);
  if (best_value <= value) {
    eps = node(best);
    value = best_value;
  }
  if (lo == 0.0 && eps <= spec.refine_tol) {
    eps = 0.0;
    value = f(0.0);
  }

  report.eps_star = eps;
  report.argmin = sign * eps;
  report.b_at_star = value;
  report.is_symmetric = eps == 0.0;
  report.all_minima = report.is_symmetric ? std::vector<double>{0.0} : std::vector<double>{-eps, eps};
  report.at_bracket_edge = hi - eps <= spec.refine_tol || (lo > 0.0 && eps - lo <= spec.refine_tol);
  return report;
}

std::vector<SweepPoint> eps_beta_sweep(std::span<const double> betas, double delta,
                                       const ChannelModel& channel, const SearchSpec* spec,
                                       unsigned threads) {
  for (const double beta : betas) {
    if (!(beta >= 2.0)) {
      throw DomainError("eps_beta_sweep: shapes must be >= 2, got " + std::to_string(beta));
    }
  }
  std::vector<SweepPoint> out(betas.size());
  const auto solve = [&](std::size_t i) {
    const NoiseModel model(Ggd{betas[i], delta});
    const SearchSpec s = spec ? *spec : SearchSpec::default_for(model);
    const OptimumReport r = find_optimal_eps(model, channel, s);
    out[i] = {betas[i], r.eps_star / std::sqrt(model.variance())};
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(betas.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < betas.size(); ++i) solve(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < betas.size(); i = next++) {
        try {
          solve(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace binquant
