#include "binquant/serialization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "binquant/error.hpp"
#include "binquant/model_text.hpp"
#include "json.hpp"

namespace binquant {

namespace {

using nlohmann::json;

std::string format_fixed6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

// Finite numbers as JSON numbers; nan / +-inf as strings, which JSON cannot carry natively.
json number_or_tag(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

std::vector<std::vector<std::string>> read_csv(std::string_view text, std::string_view header) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  if (std::getline(in, line) && !line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) {
    throw ParseError("header", "csv: expected header '" + std::string(header) + "'");
  }
  const std::size_t columns = static_cast<std::size_t>(std::count(header.begin(), header.end(), ',')) + 1;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != columns) {
      throw ParseError("row", "csv: expected " + std::to_string(columns) + " columns in '" + line + "'");
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

double parse_cell(const std::string& cell, std::string_view column) {
  if (cell == "nan") return std::nan("");
  return parse_double(cell, column);
}

std::size_t parse_count(const std::string& cell, std::string_view column) {
  const double v = parse_double(cell, column);
  if (!(v >= 0.0) || std::floor(v) != v) {
    throw ParseError(std::string(column), "csv: '" + cell + "' is not a count");
  }
  return static_cast<std::size_t>(v);
}

constexpr std::string_view kBoundHeader = "epsilon,b,crb";
constexpr std::string_view kSimHeader = "epsilon,mse,runs_used,saturated_runs,crb";
constexpr std::string_view kSweepHeader = "beta,eps_star_over_sigma";

json optional_number(const std::optional<double>& v) {
  return v ? number_or_tag(*v) : json(nullptr);
}

}  // namespace

std::string format_sig9(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::string to_csv(const BoundCurve& curve) {
  std::string out(kBoundHeader);
  out += '\n';
  for (const BoundRow& r : curve.rows) {
    out += format_sig9(r.epsilon) + ',' + format_sig9(r.b_value) + ',' + format_sig9(r.crb) + '\n';
  }
  return out;
}

std::vector<BoundRow> bound_rows_from_csv(std::string_view text) {
  std::vector<BoundRow> rows;
  for (const auto& cells : read_csv(text, kBoundHeader)) {
    rows.push_back({parse_cell(cells[0], "epsilon"), parse_cell(cells[1], "b"), parse_cell(cells[2], "crb")});
  }
  return rows;
}

std::string to_json(const BoundCurve& curve) {
  json rows = json::array();
  for (const BoundRow& r : curve.rows) {
    rows.push_back({{"epsilon", r.epsilon}, {"b_value", r.b_value}, {"crb", r.crb}});
  }
  const json j = {
      {"model_desc", curve.model_desc},
      {"n_samples", curve.n_samples},
      {"channel_q", curve.channel_q},
      {"rows", rows},
  };
  return j.dump(2);
}

std::string to_csv(const SimReport& report) {
  std::string out(kSimHeader);
  out += '\n';
  for (const SimRow& r : report.rows) {
    out += format_sig9(r.epsilon) + ',' + format_sig9(r.mse) + ',' + std::to_string(r.runs_used) + ',' +
           std::to_string(r.saturated_runs) + ',' + format_sig9(r.crb) + '\n';
  }
  return out;
}

std::vector<SimRow> sim_rows_from_csv(std::string_view text) {
  std::vector<SimRow> rows;
  for (const auto& cells : read_csv(text, kSimHeader)) {
    SimRow r;
    r.epsilon = parse_cell(cells[0], "epsilon");
    r.mse = parse_cell(cells[1], "mse");
    r.runs_used = parse_count(cells[2], "runs_used");
    r.saturated_runs = parse_count(cells[3], "saturated_runs");
    r.crb = parse_cell(cells[4], "crb");
    rows.push_back(r);
  }
  return rows;
}

std::string to_json(const SimReport& report) {
  const ExperimentSpec& s = report.spec;
  json rows = json::array();
  for (const SimRow& r : report.rows) {
    rows.push_back({
        {"epsilon", r.epsilon},
        {"mse", number_or_tag(r.mse)},
        {"mse_std_error", r.mse_std_error},
        {"runs_used", r.runs_used},
        {"saturated_runs", r.saturated_runs},
        {"crb", r.crb},
    });
  }
  const json j = {
      {"metadata",
       {
           {"model", to_string(s.model)},
           {"q", s.channel.q()},
           {"true_x", s.true_x},
           {"eps_grid", s.eps_grid},
           {"n_samples", s.n_samples},
           {"n_runs", s.n_runs},
           {"master_seed", s.master_seed},
           {"saturation_policy", to_string(s.saturation_policy)},
           {"rng_algorithm", report.rng_algorithm},
       }},
      {"rows", rows},
  };
  return j.dump(2);
}

std::string sweep_to_csv(std::span<const SweepPoint> points) {
  std::string out(kSweepHeader);
  out += '\n';
  for (const SweepPoint& p : points) {
    out += format_fixed6(p.beta) + ',' + format_fixed6(p.eps_star_over_sigma) + '\n';
  }
  return out;
}

std::vector<SweepPoint> sweep_from_csv(std::string_view text) {
  std::vector<SweepPoint> points;
  for (const auto& cells : read_csv(text, kSweepHeader)) {
    points.push_back({parse_cell(cells[0], "beta"), parse_cell(cells[1], "eps_star_over_sigma")});
  }
  return points;
}

std::string to_json(const OptimumReport& r) {
  const json j = {
      {"eps_star", r.eps_star},
      {"argmin", r.argmin},
      {"b_at_star", r.b_at_star},
      {"is_symmetric", r.is_symmetric},
      {"all_minima", r.all_minima},
      {"at_bracket_edge", r.at_bracket_edge},
      {"refine_iterations", r.refine_iterations},
  };
  return j.dump(2);
}

std::string to_json(const SymmetryVerdict& v) {
  json j = {
      {"q", v.q},
      {"pdf_at_0", v.pdf_at_0},
      {"pdf_d2_at_0", v.pdf_d2_diverges ? json("-inf") : optional_number(v.pdf_d2_at_0)},
      {"lhs", v.pdf_d2_diverges ? json("inf") : optional_number(v.lhs)},
      {"rhs", v.rhs},
      {"condition_holds", v.condition_holds ? json(*v.condition_holds) : json(nullptr)},
      {"second_deriv_at_0", v.pdf_d2_diverges ? json("inf") : optional_number(v.second_deriv_at_0)},
      {"classification", std::string(curvature_name(v.classification))},
  };
  return j.dump(2);
}

}  // namespace binquant
