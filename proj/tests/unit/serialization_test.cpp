#include "binquant/serialization.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include "binquant/bounds.hpp"
#include "binquant/error.hpp"
#include "binquant/montecarlo.hpp"
#include "binquant/threshold_search.hpp"

using namespace binquant;
using nlohmann::json;

TEST(BoundCsv, HeaderAndRoundTrip) {
  const NoiseModel g(Ggd{4.0, 1.0});
  const auto grid = uniform_grid(-1.0, 1.0, 21);
  const BoundCurve c = make_bound_curve(g, ChannelModel(0.05), 500, grid);
  const std::string csv = to_csv(c);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "epsilon,b,crb");
  const auto rows = bound_rows_from_csv(csv);
  ASSERT_EQ(rows.size(), c.rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    // Lossless at the printed precision: reprinting yields the same text.
    EXPECT_EQ(format_sig9(rows[i].epsilon), format_sig9(c.rows[i].epsilon));
    EXPECT_EQ(format_sig9(rows[i].b_value), format_sig9(c.rows[i].b_value));
    EXPECT_EQ(format_sig9(rows[i].crb), format_sig9(c.rows[i].crb));
    EXPECT_NEAR(rows[i].b_value, c.rows[i].b_value, 1e-8 * c.rows[i].b_value);
  }
  BoundCurve back = c;
  back.rows = rows;
  EXPECT_EQ(to_csv(back), csv);
}

TEST(BoundCsv, RejectsWrongHeader) {
  EXPECT_THROW(bound_rows_from_csv("eps,b,crb\n0,1,1\n"), ParseError);
  EXPECT_THROW(bound_rows_from_csv("epsilon,b,crb\n0,1\n"), ParseError);
  EXPECT_THROW(bound_rows_from_csv("epsilon,b,crb\n0,x,1\n"), ParseError);
  EXPECT_NO_THROW(bound_rows_from_csv("epsilon,b,crb\r\n0,1,1\r\n"));
}

TEST(BoundJson, MirrorsFields) {
  const BoundCurve c = make_bound_curve(NoiseModel(Laplacian{1.0}), ChannelModel::perfect(), 4,
                                        std::vector<double>{0.0, 1.0});
  const json j = json::parse(to_json(c));
  EXPECT_EQ(j["model_desc"], "laplacian:delta=1");
  EXPECT_EQ(j["n_samples"], 4);
  EXPECT_EQ(j["channel_q"], 0.0);
  ASSERT_EQ(j["rows"].size(), 2u);
  EXPECT_EQ(j["rows"][0]["b_value"], 1.0);
  EXPECT_EQ(j["rows"][0]["crb"], 0.25);
}

TEST(SimCsv, RoundTrip) {
  ExperimentSpec s{NoiseModel(Gaussian{1.0}), ChannelModel(0.1)};
  s.eps_grid = {-0.5, 0.0, 0.5};
  s.n_samples = 40;
  s.n_runs = 300;
  s.saturation_policy = SaturationPolicy::exclude_and_count();
  const SimReport r = run_experiment(s);
  const std::string csv = to_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "epsilon,mse,runs_used,saturated_runs,crb");
  const auto rows = sim_rows_from_csv(csv);
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].runs_used, r.rows[i].runs_used);
    EXPECT_EQ(rows[i].saturated_runs, r.rows[i].saturated_runs);
    EXPECT_EQ(format_sig9(rows[i].mse), format_sig9(r.rows[i].mse));
    EXPECT_EQ(format_sig9(rows[i].crb), format_sig9(r.rows[i].crb));
  }
  SimReport back = r;
  back.rows = rows;
  EXPECT_EQ(to_csv(back), csv);
}

TEST(SimJson, HasMetadata) {
  ExperimentSpec s{NoiseModel(HybridUniformGaussian{1.0, 1.0}), ChannelModel::perfect()};
  s.eps_grid = {0.0};
  s.n_samples = 20;
  s.n_runs = 10;
  s.master_seed = 99;
  s.saturation_policy = SaturationPolicy::exclude_and_count();
  const json j = json::parse(to_json(run_experiment(s)));
  EXPECT_EQ(j["metadata"]["model"], "hybrid:alpha=1,sigma=1");
  EXPECT_EQ(j["metadata"]["master_seed"], 99);
  EXPECT_EQ(j["metadata"]["rng_algorithm"], std::string(kRngAlgorithm));
  EXPECT_EQ(j["metadata"]["saturation_policy"], "exclude_and_count");
  EXPECT_EQ(j["rows"].size(), 1u);
}

TEST(SweepCsv, SixDecimalsAndRoundTrip) {
  const std::vector<SweepPoint> pts = {{2.0, 0.0}, {4.0, 1.2277751260102}, {10.5, 1.656555931}};
  const std::string csv = sweep_to_csv(pts);
  EXPECT_EQ(csv, "beta,eps_star_over_sigma\n2.000000,0.000000\n4.000000,1.227775\n10.500000,1.656556\n");
  const auto back = sweep_from_csv(csv);
  ASSERT_EQ(back.size(), 3u);
  EXPECT_EQ(sweep_to_csv(back), csv);
}

TEST(ReportJson, OptimumAndVerdict) {
  const NoiseModel h(HybridUniformGaussian{1.0, 1.0});
  const json o = json::parse(to_json(find_optimal_eps(h, ChannelModel::perfect(), SearchSpec::default_for(h))));
  EXPECT_NEAR(o["eps_star"].get<double>(), 0.822068, 1e-6);
  EXPECT_EQ(o["is_symmetric"], false);
  EXPECT_EQ(o["all_minima"].size(), 2u);

  const json v = json::parse(to_json(symmetry_condition(NoiseModel(Ggd{1.5, 1.0}), ChannelModel::perfect())));
  EXPECT_EQ(v["classification"], "local_min");
  EXPECT_EQ(v["pdf_d2_at_0"], "-inf");
  const json lap = json::parse(to_json(symmetry_condition(NoiseModel(Laplacian{1.0}), ChannelModel::perfect())));
  EXPECT_EQ(lap["classification"], "underivable");
  EXPECT_TRUE(lap["condition_holds"].is_null());
}

TEST(Format, NineSignificantDigits) {
  EXPECT_EQ(format_sig9(0.00614822092822), "0.00614822093");
  EXPECT_EQ(format_sig9(1.0), "1");
  EXPECT_EQ(format_sig9(-2.5e-12), "-2.5e-12");
}
