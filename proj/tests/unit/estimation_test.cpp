#include "binquant/estimation.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "binquant/bounds.hpp"
#include "binquant/error.hpp"
#include "models.hpp"

using namespace binquant;

namespace {

BinarySample make(std::initializer_list<int> bits, double tau0 = 0.0) {
  BinarySample s;
  for (int b : bits) s.bits.push_back(static_cast<std::int8_t>(b));
  s.tau0 = tau0;
  return s;
}

BinarySample repeated(int minus, int plus, double tau0 = 0.0) {
  BinarySample s;
  s.bits.assign(static_cast<std::size_t>(minus), -1);
  s.bits.insert(s.bits.end(), static_cast<std::size_t>(plus), 1);
  s.tau0 = tau0;
  return s;
}

}  // namespace

TEST(EstimateP, Examples) {
  EXPECT_EQ(estimate_p(make({-1, -1, 1, 1}).bits), 0.5);
  EXPECT_EQ(estimate_p(make({1, 1, 1}).bits), 0.0);
  EXPECT_EQ(estimate_p(repeated(7, 3).bits), 0.7);
  EXPECT_THROW(estimate_p(std::vector<std::int8_t>{}), EmptyInputError);
}

TEST(BinarySample, Validation) {
  EXPECT_THROW(make({}).validate(), EmptyInputError);
  EXPECT_THROW(make({1, 0, -1}).validate(), DomainError);
  EXPECT_THROW(make({2}).validate(), DomainError);
  EXPECT_NO_THROW(make({1, -1}).validate());
}

TEST(EstimateX, Examples) {
  const NoiseModel g(Gaussian{1.0});
  const auto mid = estimate_x(g, make({-1, 1, -1, 1}, 0.3));
  ASSERT_FALSE(mid.saturated());
  EXPECT_EQ(*mid.value(), 0.3);

  const double p = g.cdf(0.5);
  EXPECT_NEAR(p, 0.760249938906523, 1e-14);
  const auto r = estimate_x_from_frequency(g, p, 0.0);
  EXPECT_NEAR(*r.value(), -0.5, 1e-12);

  const auto all_plus = estimate_x(g, repeated(0, 10));
  ASSERT_TRUE(all_plus.saturated());
  EXPECT_EQ(std::get<Saturated>(all_plus.x_hat).direction, SaturationDirection::positive);
  const auto all_minus = estimate_x(g, repeated(10, 0));
  ASSERT_TRUE(all_minus.saturated());
  EXPECT_EQ(std::get<Saturated>(all_minus.x_hat).direction, SaturationDirection::negative);
  EXPECT_THROW(estimate_x(g, make({})), EmptyInputError);
}

TEST(EstimateXBsc, Examples) {
  const NoiseModel g(Gaussian{1.0});
  const ChannelModel ch(0.1);
  const auto mid = estimate_x_bsc_from_frequency(g, ch, 0.5, 1.25);
  EXPECT_EQ(*mid.value(), 1.25);
  EXPECT_FALSE(mid.clamped);

  const auto low = estimate_x_bsc_from_frequency(g, ch, 0.05, 0.0);
  EXPECT_TRUE(low.saturated());
  EXPECT_TRUE(low.clamped);
  EXPECT_EQ(std::get<Saturated>(low.x_hat).direction, SaturationDirection::positive);

  const auto high = estimate_x_bsc_from_frequency(g, ch, 0.95, 0.0);
  EXPECT_TRUE(high.saturated());
  EXPECT_TRUE(high.clamped);
  EXPECT_EQ(std::get<Saturated>(high.x_hat).direction, SaturationDirection::negative);

  // Exactly at the boundary: saturated, but no clipping was needed.
  const auto edge = estimate_x_bsc_from_frequency(g, ch, 0.1, 0.0);
  EXPECT_TRUE(edge.saturated());
}

TEST(EstimateXBsc, ReducesToPerfectChannel) {
  for (const auto& [name, m] : testing_models::all_five()) {
    for (int minus = 0; minus <= 20; ++minus) {
      const BinarySample s = repeated(minus, 20 - minus, 0.4);
      const auto a = estimate_x(m, s);
      const auto b = estimate_x_bsc(m, ChannelModel::perfect(), s);
      EXPECT_EQ(a.x_hat, b.x_hat) << name << " minus=" << minus;
      EXPECT_EQ(a.frequency, b.frequency);
      EXPECT_FALSE(b.clamped);
    }
  }
}

TEST(EstimationProperty, SaturatedExactlyAtBoundary) {
  const NoiseModel g(Ggd{4.0, 1.0});
  for (std::size_t n : {1u, 2u, 50u}) {
    for (std::size_t k = 0; k <= n; ++k) {
      const auto r = estimate_x_from_counts(g, ChannelModel::perfect(), k, n, 0.0);
      EXPECT_EQ(r.saturated(), k == 0 || k == n) << n << " " << k;
      if (!r.saturated()) {
        EXPECT_TRUE(std::isfinite(*r.value()));
        EXPECT_NEAR(g.cdf(0.0 - *r.value()), r.frequency, 1e-9);
      }
    }
  }
}

TEST(EstimationProperty, TauShiftEquivariance) {
  for (const auto& [name, m] : testing_models::all_five()) {
    for (double p : {0.1, 0.37, 0.5, 0.81}) {
      const auto a = estimate_x_from_frequency(m, p, 0.0);
      for (double c : {-2.0, 0.75, 10.0}) {
        const auto b = estimate_x_from_frequency(m, p, c);
        EXPECT_NEAR(*b.value() - c, *a.value(), 1e-12) << name;
      }
    }
  }
}

TEST(EstimationProperty, StrictlyDecreasingInFrequency) {
  for (const auto& [name, m] : testing_models::all_five()) {
    double prev = *estimate_x_from_frequency(m, 0.001, 0.0).value();
    for (double p = 0.002; p < 1.0; p += 0.001) {
      const double cur = *estimate_x_from_frequency(m, p, 0.0).value();
      ASSERT_LT(cur, prev) << name << " p=" << p;
      prev = cur;
    }
  }
}

TEST(EstimationProperty, PopulationRoundTrip) {
  for (const auto& [name, m] : testing_models::varied()) {
    for (double x : {-1.3, 0.0, 0.4, 2.0}) {
      for (double tau : {-0.5, 0.0, 1.1}) {
        const double p = m.cdf(tau - x);
        if (p <= 0.0 || p >= 1.0) continue;
        EXPECT_NEAR(*estimate_x_from_frequency(m, p, tau).value(), x, 1e-9) << name;
      }
    }
  }
}

TEST(EstimationProperty, BscPopulationRoundTrip) {
  for (const auto& [name, m] : testing_models::varied()) {
    for (double q : {0.0, 0.05, 0.3, 0.45}) {
      const ChannelModel ch(q);
      for (double x : {-1.0, 0.0, 0.6}) {
        const double tau = 0.2;
        const double p = m.cdf(tau - x);
        if (p <= 0.0 || p >= 1.0) continue;
        const double r = ch.received_minus_probability(p);
        const auto est = estimate_x_bsc_from_frequency(m, ch, r, tau);
        ASSERT_FALSE(est.saturated()) << name;
        EXPECT_NEAR(*est.value(), x, 1e-9) << name << " q=" << q;
      }
    }
  }
}

TEST(Estimation, FrequencyDomain) {
  const NoiseModel g(Gaussian{1.0});
  EXPECT_THROW(estimate_x_from_frequency(g, -0.1, 0.0), DomainError);
  EXPECT_THROW(estimate_x_from_frequency(g, 1.1, 0.0), DomainError);
  EXPECT_THROW(estimate_x_from_counts(g, ChannelModel::perfect(), 3, 2, 0.0), DomainError);
  EXPECT_THROW(estimate_x_from_counts(g, ChannelModel::perfect(), 0, 0, 0.0), EmptyInputError);
}
