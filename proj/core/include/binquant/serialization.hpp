#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "binquant/bounds.hpp"
#include "binquant/montecarlo.hpp"
#include "binquant/threshold_search.hpp"

namespace binquant {

// CSV writers print reals with 9 significant digits (sweep: 6 decimals). Readers accept exactly
// the header the writer produces and throw ParseError otherwise.

/// `epsilon,b,crb`
std::string to_csv(const BoundCurve& curve);
std::vector<BoundRow> bound_rows_from_csv(std::string_view text);
std::string to_json(const BoundCurve& curve);

/// `epsilon,mse,runs_used,saturated_runs,crb`
std::string to_csv(const SimReport& report);
std::vector<SimRow> sim_rows_from_csv(std::string_view text);
/// Rows plus a metadata block echoing the experiment and the RNG algorithm.
std::string to_json(const SimReport& report);

/// `beta,eps_star_over_sigma`
std::string sweep_to_csv(std::span<const SweepPoint> points);
std::vector<SweepPoint> sweep_from_csv(std::string_view text);

std::string to_json(const OptimumReport& report);
std::string to_json(const SymmetryVerdict& verdict);

/// printf("%.9g")
std::string format_sig9(double value);

}  // namespace binquant
