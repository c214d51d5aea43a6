#include "config.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "binquant/error.hpp"
#include "binquant/model_text.hpp"

namespace binquant::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = s.find(sep);
    out.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

std::uint64_t parse_unsigned(std::string_view text, std::string_view key) {
  text = trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(std::string(key), "invalid unsigned integer '" + std::string(text) + "' for key '" +
                                           std::string(key) + "'");
  }
  return value;
}

}  // namespace

std::vector<double> GridSpec::values() const {
  if (points == 1) return {lo};
  std::vector<double> out(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

GridSpec parse_grid(std::string_view text, std::string_view key) {
  const auto parts = split(trim(text), ':');
  if (parts.size() != 3) {
    throw ParseError(std::string(key), "'" + std::string(key) + "' expects lo:hi:points, got '" +
                                           std::string(text) + "'");
  }
  GridSpec g;
  g.lo = parse_double(parts[0], key);
  g.hi = parse_double(parts[1], key);
  g.points = static_cast<std::size_t>(parse_unsigned(parts[2], key));
  if (!std::isfinite(g.lo) || !std::isfinite(g.hi)) {
    throw ParseError(std::string(key), "'" + std::string(key) + "': bounds must be finite");
  }
  if (g.points == 0) throw ParseError(std::string(key), "'" + std::string(key) + "': points must be >= 1");
  if (g.points == 1 && g.lo != g.hi) {
    throw ParseError(std::string(key), "'" + std::string(key) + "': a single point is written v:v:1");
  }
  if (g.points > 1 && !(g.lo < g.hi)) {
    throw ParseError(std::string(key), "'" + std::string(key) + "': lo must be < hi");
  }
  return g;
}

std::string to_string(const GridSpec& grid) {
  return format_double(grid.lo) + ':' + format_double(grid.hi) + ':' + std::to_string(grid.points);
}

Bracket parse_bracket(std::string_view text, std::string_view key) {
  const auto parts = split(trim(text), ':');
  if (parts.size() != 2) {
    throw ParseError(std::string(key), "'" + std::string(key) + "' expects lo:hi, got '" + std::string(text) + "'");
  }
  Bracket b{parse_double(parts[0], key), parse_double(parts[1], key)};
  if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || !(b.lo < b.hi)) {
    throw ParseError(std::string(key), "'" + std::string(key) + "': need finite lo < hi");
  }
  return b;
}

OutputFormat parse_format(std::string_view text, std::string_view key) {
  text = trim(text);
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  if (text == "text") return OutputFormat::text;
  throw ParseError(std::string(key), "'" + std::string(key) + "': unknown format '" + std::string(text) + "'");
}

std::string_view to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
    case OutputFormat::text: return "text";
  }
  return "csv";
}

SimulateConfig parse_simulate_config(std::string_view text) {
  SimulateConfig c;
  std::set<std::string, std::less<>> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(std::string(line), "config: expected key=value, got '" + std::string(line) + "'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw ParseError(key, "config: duplicate key '" + key + "'");

    if (key == "model") {
      c.model = to_string(parse_model(value));
    } else if (key == "q") {
      c.q = parse_double(value, key);
      static_cast<void>(ChannelModel(c.q));
    } else if (key == "true_x") {
      c.true_x = parse_double(value, key);
    } else if (key == "eps") {
      c.eps = parse_grid(value, key);
    } else if (key == "n") {
      c.n = static_cast<std::size_t>(parse_unsigned(value, key));
      if (c.n == 0) throw ParseError(key, "config: n must be >= 1");
    } else if (key == "runs") {
      c.runs = static_cast<std::size_t>(parse_unsigned(value, key));
      if (c.runs == 0) throw ParseError(key, "config: runs must be >= 1");
    } else if (key == "seed") {
      c.seed = parse_unsigned(value, key);
    } else if (key == "saturation_policy") {
      c.saturation_policy = to_string(parse_saturation_policy(value));
    } else if (key == "format") {
      c.format = parse_format(value, key);
      if (c.format == OutputFormat::text) throw ParseError(key, "config: simulate writes csv or json");
    } else if (key == "output") {
      c.output = std::string(value);
    } else {
      throw ParseError(key, "config: unknown key '" + key + "'");
    }
  }
  for (const char* required : {"model", "eps"}) {
    if (!seen.contains(required)) {
      throw ParseError(required, std::string("config: missing required key '") + required + "'");
    }
  }
  return c;
}

std::string to_config_text(const SimulateConfig& c) {
  std::string out;
  out += "model = " + c.model + '\n';
  out += "q = " + format_double(c.q) + '\n';
  out += "true_x = " + format_double(c.true_x) + '\n';
  out += "eps = " + to_string(c.eps) + '\n';
  out += "n = " + std::to_string(c.n) + '\n';
  out += "runs = " + std::to_string(c.runs) + '\n';
  out += "seed = " + std::to_string(c.seed) + '\n';
  out += "saturation_policy = " + c.saturation_policy + '\n';
  out += "format = " + std::string(to_string(c.format)) + '\n';
  if (!c.output.empty()) out += "output = " + c.output + '\n';
  return out;
}

ExperimentSpec to_experiment(const SimulateConfig& c) {
  return ExperimentSpec{
      .model = parse_model(c.model),
      .channel = ChannelModel(c.q),
      .true_x = c.true_x,
      .eps_grid = c.eps.values(),
      .n_samples = c.n,
      .n_runs = c.runs,
      .master_seed = c.seed,
      .saturation_policy = parse_saturation_policy(c.saturation_policy),
  };
}

}  // namespace binquant::cli
