#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "binquant/error.hpp"
#include "binquant/serialization.hpp"
#include "cli/commands.hpp"
#include "cli/config.hpp"

using namespace binquant;
using namespace binquant::cli;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path tmp_file(const std::string& name) {
  return std::filesystem::path(BINQUANT_TEST_TMPDIR) / name;
}

std::string write_config(const std::string& name, const std::string& text) {
  const auto path = tmp_file(name);
  std::ofstream(path) << text;
  return path.string();
}

std::string row_at(const std::string& csv, const std::string& prefix) {
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) return line;
  }
  return {};
}

}  // namespace

TEST(Grid, ParseAndFormat) {
  const GridSpec g = parse_grid("-2:2:81", "eps");
  EXPECT_EQ(g.lo, -2.0);
  EXPECT_EQ(g.hi, 2.0);
  EXPECT_EQ(g.points, 81u);
  EXPECT_EQ(g.values().size(), 81u);
  EXPECT_EQ(to_string(g), "-2:2:81");
  EXPECT_EQ(parse_grid("0.5:0.5:1", "eps").values(), std::vector<double>{0.5});
  EXPECT_THROW(parse_grid("0:1", "eps"), ParseError);
  EXPECT_THROW(parse_grid("0:1:x", "eps"), ParseError);
  EXPECT_THROW(parse_grid("0:1:-3", "eps"), ParseError);
  const Bracket b = parse_bracket("-1:3", "bracket");
  EXPECT_EQ(b.lo, -1.0);
  EXPECT_EQ(b.hi, 3.0);
  EXPECT_THROW(parse_bracket("1", "bracket"), ParseError);
}

TEST(Config, ParseSerializeCanonical) {
  const std::string text =
      "# hybrid run\n"
      "model = hybrid: sigma=1.0, alpha=1.0\n"
      "eps=-2:2:41\n"
      "runs = 20000\n"
      "seed = 42   # trailing comment\n"
      "\n"
      "saturation_policy = exclude_and_count\n";
  const SimulateConfig c = parse_simulate_config(text);
  EXPECT_EQ(c.model, "hybrid:alpha=1,sigma=1");
  EXPECT_EQ(c.runs, 20000u);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.n, 500u);
  const std::string canonical = to_config_text(c);
  EXPECT_EQ(parse_simulate_config(canonical), c);
  EXPECT_EQ(to_config_text(parse_simulate_config(canonical)), canonical);
}

TEST(Config, ErrorsNameKeys) {
  const auto key_of = [](const std::string& text) {
    try {
      parse_simulate_config(text);
    } catch (const ParseError& e) {
      return e.key();
    }
    return std::string("<none>");
  };
  EXPECT_EQ(key_of("model = gaussian:delta=1\n"), "eps");
  EXPECT_EQ(key_of("eps = 0:0:1\n"), "model");
  EXPECT_EQ(key_of("model = gaussian:delta=1\neps = 0:0:1\nthreads = 3\n"), "threads");
  EXPECT_EQ(key_of("model = gaussian:delta=1\neps = 0:0:1\nn = 5\nn = 6\n"), "n");
  EXPECT_EQ(key_of("model = gaussian:delta=1\neps = 0:0:1\nruns = ten\n"), "runs");
  EXPECT_EQ(key_of("model = gaussian:delta=1\neps = 0:0:1\nformat = xml\n"), "format");
  EXPECT_EQ(key_of("model = gaussian:delta=1\neps\n"), "eps");
}

TEST(Config, ToExperiment) {
  const auto c = parse_simulate_config("model = ggd:beta=4,delta=1\neps = 0:0.3:3\nq = 0.1\nn = 50\n");
  const ExperimentSpec s = to_experiment(c);
  EXPECT_EQ(s.eps_grid, (std::vector<double>{0.0, 0.15, 0.3}));
  EXPECT_EQ(s.n_samples, 50u);
  EXPECT_EQ(s.channel.q(), 0.1);
  EXPECT_EQ(s.master_seed, 1u);
}

TEST(CrbSweep, FigureTwoRow) {
  const auto r = run_cli({"crb-sweep", "--model", "hybrid:alpha=1,sigma=1", "--n", "500", "--eps", "-2:2:81"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "epsilon,b,crb");
  EXPECT_EQ(row_at(r.out, "0,"), "0,3.07411046,0.00614822093");
  EXPECT_EQ(bound_rows_from_csv(r.out).size(), 81u);
}

TEST(CrbSweep, SinglePointExamples) {
  const auto lap = run_cli({"crb-sweep", "--model", "laplacian:delta=1", "--n", "1", "--eps", "0:0:1"});
  ASSERT_EQ(lap.code, 0);
  EXPECT_EQ(bound_rows_from_csv(lap.out).at(0).b_value, 1.0);
  const auto bsc =
      run_cli({"crb-sweep", "--model", "gaussian:delta=1", "--q", "0.1", "--n", "1", "--eps", "0:0:1"});
  ASSERT_EQ(bsc.code, 0);
  EXPECT_NEAR(bound_rows_from_csv(bsc.out).at(0).b_value, 1.2271846, 1e-7);
}

TEST(CrbSweep, JsonEchoesConfig) {
  const auto r = run_cli({"crb-sweep", "--model", "gaussian:delta=1.0", "--n", "10", "--eps", "0:1:3",
                          "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["config"]["model"], "gaussian:delta=1");
  EXPECT_EQ(j["config"]["eps"], "0:1:3");
  EXPECT_EQ(j["result"]["rows"].size(), 3u);
}

TEST(CrbSweep, ExitCodes) {
  const auto bad_model = run_cli({"crb-sweep", "--model", "gaussian:sigma=1", "--n", "5", "--eps", "0:1:3"});
  EXPECT_EQ(bad_model.code, kExitParse);
  EXPECT_NE(bad_model.err.find("sigma"), std::string::npos);
  const auto bad_grid = run_cli({"crb-sweep", "--model", "gaussian:delta=1", "--n", "5", "--eps", "0:1"});
  EXPECT_EQ(bad_grid.code, kExitParse);
  EXPECT_NE(bad_grid.err.find("--eps"), std::string::npos);
  const auto tail = run_cli({"crb-sweep", "--model", "gaussian:delta=1", "--n", "5", "--eps", "50:60:3"});
  EXPECT_EQ(tail.code, kExitNumeric);
  const auto bad_q = run_cli({"crb-sweep", "--model", "gaussian:delta=1", "--q", "0.5", "--n", "5", "--eps", "0:1:3"});
  EXPECT_EQ(bad_q.code, kExitParse);
}

TEST(Cli, UnknownFlagsAndCommandsAreErrors) {
  EXPECT_EQ(run_cli({"crb-sweep", "--model", "gaussian:delta=1", "--n", "5", "--eps", "0:1:3", "--bogus"}).code,
            kExitParse);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kExitParse);
  EXPECT_EQ(run_cli({}).code, kExitParse);
}

TEST(Cli, HelpListsFlagsWithUnits) {
  for (const std::string cmd : {"crb-sweep", "check-symmetry", "optimal-threshold", "eps-beta-sweep", "simulate"}) {
    const auto r = run_cli({cmd, "--help"});
    EXPECT_EQ(r.code, 0) << cmd;
    EXPECT_NE(r.out.find("units"), std::string::npos) << cmd;
    EXPECT_NE(r.out.find("dimensionless"), std::string::npos) << cmd;
  }
  const auto top = run_cli({"--help"});
  EXPECT_EQ(top.code, 0);
  EXPECT_NE(top.out.find("crb-sweep"), std::string::npos);
}

TEST(CheckSymmetry, TextPrintsBothSides) {
  const auto r = run_cli({"check-symmetry", "--model", "gaussian:delta=1"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("lhs -f''(0)/(1-2q)^2: 1.12837917"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("rhs 4 f(0)^3: 0.718348489"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("classification: local_min"), std::string::npos);
  const auto h = run_cli({"check-symmetry", "--model", "hybrid:alpha=1,sigma=1"});
  EXPECT_NE(h.out.find("classification: local_max"), std::string::npos);
  EXPECT_NE(h.out.find("condition holds: no"), std::string::npos);
  const auto g = run_cli({"check-symmetry", "--model", "ggd:beta=4,delta=1", "--q", "0.3", "--format", "json"});
  ASSERT_EQ(g.code, 0);
  const json j = json::parse(g.out);
  EXPECT_EQ(j["result"]["condition_holds"], false);
  EXPECT_EQ(j["result"]["lhs"], 0.0);
  EXPECT_TRUE(j["result"]["critical_q"].is_null());
  EXPECT_EQ(j["config"]["q"], 0.3);
}

TEST(OptimalThreshold, Examples) {
  const auto g = run_cli({"optimal-threshold", "--model", "gaussian:delta=1"});
  ASSERT_EQ(g.code, 0);
  EXPECT_EQ(json::parse(g.out)["result"]["eps_star"], 0.0);
  const auto h = run_cli({"optimal-threshold", "--model", "hybrid:alpha=1,sigma=1"});
  const json jh = json::parse(h.out);
  EXPECT_NEAR(jh["result"]["eps_star"].get<double>(), 0.80, 0.05);
  EXPECT_NEAR(jh["result"]["b_at_star"].get<double>() / 500.0, 0.0053422, 2e-5);
  const auto gg = run_cli({"optimal-threshold", "--model", "ggd:beta=4,delta=1", "--bracket", "0:3"});
  const json jg = json::parse(gg.out);
  EXPECT_NEAR(jg["result"]["eps_star"].get<double>(), 0.714, 1e-3);
  EXPECT_EQ(jg["config"]["bracket"], "0:3");
}

TEST(EpsBetaSweep, CsvAndThreadInvariance) {
  const auto one = run_cli({"eps-beta-sweep", "--beta", "2:10:5"});
  const auto four = run_cli({"eps-beta-sweep", "--beta", "2:10:5", "--threads", "4"});
  ASSERT_EQ(one.code, 0);
  EXPECT_EQ(one.out, four.out);
  EXPECT_EQ(row_at(one.out, "2.0"), "2.000000,0.000000");
  EXPECT_EQ(row_at(one.out, "4.0"), "4.000000,1.227775");
  EXPECT_EQ(row_at(one.out, "10.0"), "10.000000,1.656556");
  EXPECT_EQ(run_cli({"eps-beta-sweep", "--beta", "1.5:3:2"}).code, kExitParse);
}

TEST(Simulate, DeterministicAndThreadInvariant) {
  const auto path = write_config("sim.cfg",
                                 "model = ggd:beta=4,delta=1\neps = -0.3:0.3:3\nn = 50\nruns = 300\nseed = 5\n");
  const auto a = run_cli({"simulate", "--config", path});
  const auto b = run_cli({"simulate", "--config", path, "--threads", "3"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(sim_rows_from_csv(a.out).size(), 3u);
  const auto j = run_cli({"simulate", "--config", path, "--format", "json"});
  const json doc = json::parse(j.out);
  EXPECT_EQ(doc["result"]["metadata"]["master_seed"], 5);
  EXPECT_NE(doc["config"]["config_text"].get<std::string>().find("seed = 5"), std::string::npos);
}

TEST(Simulate, OutputFile) {
  const auto cfg = write_config("sim_out.cfg", "model = gaussian:delta=1\neps = 0:0:1\nn = 20\nruns = 50\n");
  const auto out = tmp_file("sim_out.csv");
  std::filesystem::remove(out);
  const auto r = run_cli({"simulate", "--config", cfg, "--output", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(out);
  std::stringstream s;
  s << in.rdbuf();
  EXPECT_EQ(s.str().substr(0, 8), "epsilon,");
}

TEST(Simulate, SaturationExitCode) {
  const auto cfg = write_config("sat.cfg", "model = gaussian:delta=1\neps = 0:0:1\nn = 1\nruns = 50\n");
  EXPECT_EQ(run_cli({"simulate", "--config", cfg}).code, kExitSaturation);
  const auto counted = write_config(
      "sat_ok.cfg", "model = gaussian:delta=1\neps = 0:0:1\nn = 1\nruns = 50\nsaturation_policy = exclude_and_count\n");
  EXPECT_EQ(run_cli({"simulate", "--config", counted}).code, kExitOk);
}

TEST(Simulate, ConfigErrors) {
  const auto cfg = write_config("bad.cfg", "model = gaussian:delta=1\neps = 0:0:1\nbogus = 1\n");
  const auto r = run_cli({"simulate", "--config", cfg});
  EXPECT_EQ(r.code, kExitParse);
  EXPECT_NE(r.err.find("bogus"), std::string::npos);
  EXPECT_EQ(run_cli({"simulate", "--config", tmp_file("missing.cfg").string()}).code, kExitParse);
}

TEST(PdfTable, Plateau) {
  const auto r = run_cli({"pdf-table", "--model", "hybrid:alpha=1,sigma=1", "--v", "0:0:1"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "v,pdf,cdf\n0,0.285174225,0.5\n");
}
