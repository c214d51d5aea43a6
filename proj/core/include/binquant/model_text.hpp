#pragma once

#include <string>
#include <string_view>

#include "binquant/noise_model.hpp"

namespace binquant {

/// Parses `gaussian:delta=1`, `cauchy:delta=1`, `laplacian:delta=1`,
/// `hybrid:alpha=1,sigma=1` or `ggd:beta=4,delta=1`.
/// Throws ParseError naming the offending key, DomainError for invalid values.
NoiseModel parse_model(std::string_view text);

/// Canonical text form (fixed key order, shortest round-trip numbers).
std::string to_string(const NoiseModel& model);

/// Shortest decimal that parses back to exactly `value`.
std::string format_double(double value);

/// Strict full-string double parse; throws ParseError with `key` on failure.
double parse_double(std::string_view text, std::string_view key);

}  // namespace binquant
