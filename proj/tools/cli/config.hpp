#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "binquant/montecarlo.hpp"

namespace binquant::cli {

/// `lo:hi:points`; a single point is written `v:v:1`.
struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t points = 1;

  std::vector<double> values() const;
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

GridSpec parse_grid(std::string_view text, std::string_view key);
std::string to_string(const GridSpec& grid);

/// `lo:hi` search bracket.
struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

Bracket parse_bracket(std::string_view text, std::string_view key);

enum class OutputFormat { csv, json, text };

OutputFormat parse_format(std::string_view text, std::string_view key);
std::string_view to_string(OutputFormat format);

/// Flat key=value configuration of the `simulate` command. Keys mirror its flags.
struct SimulateConfig {
  std::string model;
  double q = 0.0;
  double true_x = 0.0;
  GridSpec eps;
  std::size_t n = 500;
  std::size_t runs = 1000;
  std::uint64_t seed = 1;
  std::string saturation_policy = "error_if_over:0.01";
  OutputFormat format = OutputFormat::csv;
  std::string output;  // empty = stdout

  friend bool operator==(const SimulateConfig&, const SimulateConfig&) = default;
};

/// Parses `key = value` lines; `#` starts a comment. Unknown or duplicate keys are errors.
/// Values are normalized (model text canonicalized, numbers reformatted).
SimulateConfig parse_simulate_config(std::string_view text);

/// Canonical text: every key, fixed order, one per line.
std::string to_config_text(const SimulateConfig& config);

ExperimentSpec to_experiment(const SimulateConfig& config);

}  // namespace binquant::cli
