#include "commands.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "binquant/bounds.hpp"
#include "binquant/error.hpp"
#include "binquant/model_text.hpp"
#include "binquant/montecarlo.hpp"
#include "binquant/serialization.hpp"
#include "binquant/threshold_search.hpp"
#include "config.hpp"
#include "json.hpp"

namespace binquant::cli {

namespace {

using nlohmann::json;

// Wraps a result JSON document with the resolved configuration.
std::string with_config(const json& config, const std::string& result_json) {
  const json doc = {{"config", config}, {"result", json::parse(result_json)}};
  return doc.dump(2) + '\n';
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ParseError("output", "cannot open output file '" + path + "'");
  file << text;
}

struct CrbSweepArgs {
  std::string model;
  double q = 0.0;
  std::size_t n = 0;
  std::string eps;
  std::string format = "csv";
  std::string output;
};

struct SymmetryArgs {
  std::string model;
  double q = 0.0;
  std::string format = "text";
  std::string output;
};

struct OptimalArgs {
  std::string model;
  double q = 0.0;
  std::string bracket;
  std::size_t grid_points = 2001;
  double refine_tol = 1e-8;
  std::string output;
};

struct BetaSweepArgs {
  std::string beta;
  double delta = 1.0;
  double q = 0.0;
  unsigned threads = 1;
  std::string format = "csv";
  std::string output;
};

struct PdfTableArgs {
  std::string model;
  std::string v;
  std::string output;
};

struct SimulateArgs {
  std::string config;
  unsigned threads = 1;
  std::string format;
  std::string output;
};

std::string cmd_crb_sweep(const CrbSweepArgs& a) {
  const NoiseModel model = parse_model(a.model);
  const ChannelModel channel(a.q);
  const GridSpec grid = parse_grid(a.eps, "--eps");
  const OutputFormat format = parse_format(a.format, "--format");
  const auto eps = grid.values();
  const BoundCurve curve = make_bound_curve(model, channel, a.n, eps);
  if (format == OutputFormat::json) {
    const json config = {{"command", "crb-sweep"}, {"model", to_string(model)}, {"q", a.q},
                         {"n", a.n}, {"eps", to_string(grid)}};
    return with_config(config, to_json(curve));
  }
  if (format != OutputFormat::csv) throw ParseError("--format", "crb-sweep writes csv or json");
  return to_csv(curve);
}

std::string cmd_check_symmetry(const SymmetryArgs& a) {
  const NoiseModel model = parse_model(a.model);
  const ChannelModel channel(a.q);
  const OutputFormat format = parse_format(a.format, "--format");
  const SymmetryVerdict v = symmetry_condition(model, channel);
  std::optional<double> critical;
  bool critical_defined = true;
  try {
    critical = critical_bsc_q(model);
  } catch (const NonDifferentiableError&) {
    critical_defined = false;
  }

  if (format == OutputFormat::json) {
    json result = json::parse(to_json(v));
    result["critical_q"] = critical_defined && critical ? json(*critical) : json(nullptr);
    const json config = {{"command", "check-symmetry"}, {"model", to_string(model)}, {"q", a.q}};
    return with_config(config, result.dump());
  }
  if (format != OutputFormat::text) throw ParseError("--format", "check-symmetry writes text or json");

  const auto num = [](const std::optional<double>& x) { return x ? format_sig9(*x) : std::string("undefined"); };
  std::ostringstream s;
  s << "model: " << to_string(model) << '\n';
  s << "q: " << format_double(a.q) << '\n';
  s << "f(0): " << format_sig9(v.pdf_at_0) << '\n';
  s << "f''(0): " << (v.pdf_d2_diverges ? std::string("-inf") : num(v.pdf_d2_at_0)) << '\n';
  s << "lhs -f''(0)/(1-2q)^2: " << (v.pdf_d2_diverges ? std::string("inf") : num(v.lhs)) << '\n';
  s << "rhs 4 f(0)^3: " << format_sig9(v.rhs) << '\n';
  s << "condition holds: "
    << (v.condition_holds ? (*v.condition_holds ? "yes" : "no") : "not applicable") << '\n';
  s << "d2B/deps2 at 0: " << (v.pdf_d2_diverges ? std::string("inf") : num(v.second_deriv_at_0)) << '\n';
  s << "classification: " << curvature_name(v.classification) << '\n';
  s << "critical q: "
    << (!critical_defined ? std::string("undefined") : critical ? format_sig9(*critical) : std::string("none"))
    << '\n';
  return s.str();
}

std::string cmd_optimal_threshold(const OptimalArgs& a) {
  const NoiseModel model = parse_model(a.model);
  const ChannelModel channel(a.q);
  SearchSpec spec = SearchSpec::default_for(model);
  if (!a.bracket.empty()) {
    const Bracket b = parse_bracket(a.bracket, "--bracket");
    spec.eps_lo = b.lo;
    spec.eps_hi = b.hi;
  }
  spec.grid_points = a.grid_points;
  spec.refine_tol = a.refine_tol;
  const OptimumReport r = find_optimal_eps(model, channel, spec);
  const json config = {{"command", "optimal-threshold"},
                       {"model", to_string(model)},
                       {"q", a.q},
                       {"bracket", format_double(spec.eps_lo) + ':' + format_double(spec.eps_hi)},
                       {"grid_points", spec.grid_points},
                       {"refine_tol", spec.refine_tol}};
  return with_config(config, to_json(r));
}

std::string cmd_eps_beta_sweep(const BetaSweepArgs& a) {
  const GridSpec grid = parse_grid(a.beta, "--beta");
  const OutputFormat format = parse_format(a.format, "--format");
  const ChannelModel channel(a.q);
  const auto betas = grid.values();
  const auto points = eps_beta_sweep(betas, a.delta, channel, nullptr, a.threads);
  if (format == OutputFormat::json) {
    json rows = json::array();
    for (const auto& p : points) rows.push_back({{"beta", p.beta}, {"eps_star_over_sigma", p.eps_star_over_sigma}});
    const json config = {{"command", "eps-beta-sweep"}, {"beta", to_string(grid)}, {"delta", a.delta}, {"q", a.q}};
    return with_config(config, rows.dump());
  }
  if (format != OutputFormat::csv) throw ParseError("--format", "eps-beta-sweep writes csv or json");
  return sweep_to_csv(points);
}

std::string cmd_pdf_table(const PdfTableArgs& a) {
  const NoiseModel model = parse_model(a.model);
  const GridSpec grid = parse_grid(a.v, "--v");
  std::string text = "v,pdf,cdf\n";
  for (const double v : grid.values()) {
    text += format_sig9(v) + ',' + format_sig9(model.pdf(v)) + ',' + format_sig9(model.cdf(v)) + '\n';
  }
  return text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("--config", "cannot read config file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string cmd_simulate(SimulateArgs& a) {
  SimulateConfig config = parse_simulate_config(read_file(a.config));
  if (!a.format.empty()) config.format = parse_format(a.format, "--format");
  if (config.format == OutputFormat::text) throw ParseError("--format", "simulate writes csv or json");
  if (!a.output.empty()) config.output = a.output;
  a.output = config.output;
  const SimReport report = run_experiment(to_experiment(config), RunOptions{a.threads});
  if (config.format == OutputFormat::json) {
    const json echo = {{"command", "simulate"}, {"config_text", to_config_text(config)}};
    return with_config(echo, to_json(report));
  }
  return to_csv(report);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cramer-Rao bounds, optimal thresholds and Monte Carlo checks for one-bit quantized "
               "location estimation",
               "binquant"};
  app.require_subcommand(1);
  app.allow_extras(false);

  CrbSweepArgs crb;
  auto* crb_cmd = app.add_subcommand("crb-sweep", "Tabulate B(eps) and CRB = B/N on a uniform epsilon grid");
  crb_cmd->add_option("--model", crb.model,
                      "Noise model, e.g. hybrid:alpha=1,sigma=1 (parameters in measurement units; "
                      "beta dimensionless)")->required();
  crb_cmd->add_option("--q", crb.q, "Channel flip probability in [0, 0.5) (dimensionless)")->capture_default_str();
  crb_cmd->add_option("--n", crb.n, "Samples per block N (count, >= 1)")->required()->check(CLI::PositiveNumber);
  crb_cmd->add_option("--eps", crb.eps, "Threshold offset grid lo:hi:points (measurement units)")->required();
  crb_cmd->add_option("--format", crb.format, "Output format: csv | json")->capture_default_str();
  crb_cmd->add_option("--output", crb.output, "Output file path (default: stdout)");

  SymmetryArgs sym;
  auto* sym_cmd = app.add_subcommand("check-symmetry", "Test whether eps = 0 is a local minimum of the bound");
  sym_cmd->add_option("--model", sym.model, "Noise model text (measurement units)")->required();
  sym_cmd->add_option("--q", sym.q, "Channel flip probability in [0, 0.5) (dimensionless)")->capture_default_str();
  sym_cmd->add_option("--format", sym.format, "Output format: text | json")->capture_default_str();
  sym_cmd->add_option("--output", sym.output, "Output file path (default: stdout)");

  OptimalArgs opt;
  auto* opt_cmd = app.add_subcommand("optimal-threshold", "Locate the threshold offset minimizing the bound (JSON)");
  opt_cmd->add_option("--model", opt.model, "Noise model text (measurement units)")->required();
  opt_cmd->add_option("--q", opt.q, "Channel flip probability in [0, 0.5) (dimensionless)")->capture_default_str();
  opt_cmd->add_option("--bracket", opt.bracket,
                      "Search bracket lo:hi (measurement units; default 0:6*scale)");
  opt_cmd->add_option("--grid-points", opt.grid_points, "Coarse scan points (count, >= 3)")->capture_default_str();
  opt_cmd->add_option("--refine-tol", opt.refine_tol,
                      "Golden-section bracket width at termination (measurement units)")->capture_default_str();
  opt_cmd->add_option("--output", opt.output, "Output file path (default: stdout)");

  BetaSweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("eps-beta-sweep", "Optimal |eps|/sigma for generalized Gaussian shapes");
  sweep_cmd->add_option("--beta", sweep.beta, "Shape grid lo:hi:points (dimensionless, each >= 2)")->required();
  sweep_cmd->add_option("--delta", sweep.delta, "GGD scale delta (measurement units)")->capture_default_str();
  sweep_cmd->add_option("--q", sweep.q, "Channel flip probability in [0, 0.5) (dimensionless)")->capture_default_str();
  sweep_cmd->add_option("--threads", sweep.threads, "Worker threads (count); does not change output")
      ->capture_default_str()->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--format", sweep.format, "Output format: csv | json")->capture_default_str();
  sweep_cmd->add_option("--output", sweep.output, "Output file path (default: stdout)");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo MSE of the binary MLE against the CRB");
  sim_cmd->add_option("--config", sim.config,
                      "key=value file: model, q (dimensionless), true_x (measurement units), eps lo:hi:points "
                      "(measurement units), n (count), runs (count), seed (uint64), saturation_policy, "
                      "format, output")->required();
  sim_cmd->add_option("--threads", sim.threads, "Worker threads (count); does not change output")
      ->capture_default_str()->check(CLI::PositiveNumber);
  sim_cmd->add_option("--format", sim.format, "Override the config format: csv | json");
  sim_cmd->add_option("--output", sim.output, "Override the config output path");

  PdfTableArgs table;
  auto* table_cmd = app.add_subcommand("pdf-table", "Tabulate the noise density and distribution function");
  table_cmd->add_option("--model", table.model, "Noise model text (measurement units)")->required();
  table_cmd->add_option("--v", table.v, "Noise value grid lo:hi:points (measurement units)")->required();
  table_cmd->add_option("--output", table.output, "Output file path (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    // Help for the selected subcommand, if any.
    for (const auto* sub : app.get_subcommands()) {
      out << sub->help();
      return kExitOk;
    }
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }

  try {
    std::string text;
    std::string path;
    if (crb_cmd->parsed()) {
      text = cmd_crb_sweep(crb);
      path = crb.output;
    } else if (sym_cmd->parsed()) {
      text = cmd_check_symmetry(sym);
      path = sym.output;
    } else if (opt_cmd->parsed()) {
      text = cmd_optimal_threshold(opt);
      path = opt.output;
    } else if (sweep_cmd->parsed()) {
      text = cmd_eps_beta_sweep(sweep);
      path = sweep.output;
    } else if (table_cmd->parsed()) {
      text = cmd_pdf_table(table);
      path = table.output;
    } else if (sim_cmd->parsed()) {
      text = cmd_simulate(sim);
      path = sim.output;
    }
    emit(text, path, out);
    return kExitOk;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const SaturationPolicyError& e) {
    err << "error: " << e.what() << '\n';
    return kExitSaturation;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace binquant::cli
