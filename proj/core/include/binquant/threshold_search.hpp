#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "binquant/channel.hpp"
#include "binquant/noise_model.hpp"

namespace binquant {

struct SearchSpec {
  double eps_lo = 0.0;
  double eps_hi = 6.0;
  std::size_t grid_points = 2001;
  double refine_tol = 1e-8;

  /// Throws DomainError on an empty bracket, fewer than 3 grid points or a nonpositive tolerance.
  void validate() const;

  /// [0, 6 * scale] on the nonnegative half-line.
  static SearchSpec default_for(const NoiseModel& model);
};

struct OptimumReport {
  double eps_star = 0.0;   // nonnegative representative |argmin|
  double argmin = 0.0;     // signed minimizer inside the requested bracket
  double b_at_star = 0.0;
  bool is_symmetric = false;
  std::vector<double> all_minima;  // {-eps_star, eps_star}, or {0}
  bool at_bracket_edge = false;    // minimum sits on the far end; widen the bracket
  int refine_iterations = 0;
  double refine_bracket = 0.0;     // width of the golden-section starting bracket
};

/// Global minimizer of b_bsc(model, channel, .) over the bracket. The bracket is folded onto
/// eps >= 0 (B is even), scanned on a uniform grid, and the best cell refined by golden section.
OptimumReport find_optimal_eps(const NoiseModel& model, const ChannelModel& channel,
                               const SearchSpec& spec);

struct SweepPoint {
  double beta = 0.0;
  double eps_star_over_sigma = 0.0;
};

/// |eps*| / sigma for generalized Gaussian noise across shapes, sigma being the noise standard
/// deviation. Shapes must be >= 2. Evaluated on up to `threads` workers; output order and values
/// do not depend on the worker count.
std::vector<SweepPoint> eps_beta_sweep(std::span<const double> betas, double delta,
                                       const ChannelModel& channel, const SearchSpec* spec = nullptr,
                                       unsigned threads = 1);

}  // namespace binquant
