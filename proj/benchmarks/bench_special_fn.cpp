#include <benchmark/benchmark.h>

#include "binquant/special_fn.hpp"

namespace sf = binquant::special;

static void BM_Gamma(benchmark::State& state) {
  double x = 0.25;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf::gamma(x));
    x = x < 20.0 ? x + 0.37 : 0.25;
  }
}
BENCHMARK(BM_Gamma);

static void BM_RegLowerIncGamma(benchmark::State& state) {
  const double a = static_cast<double>(state.range(0)) / 100.0;
  double w = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf::reg_lower_inc_gamma(a, w));
    w = w < 10.0 ? w * 1.3 : 0.01;
  }
}
BENCHMARK(BM_RegLowerIncGamma)->Arg(25)->Arg(100)->Arg(1000);

static void BM_InvRegLowerIncGamma(benchmark::State& state) {
  double p = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf::inv_reg_lower_inc_gamma(0.25, p));
    p = p < 0.98 ? p + 0.0137 : 0.01;
  }
}
BENCHMARK(BM_InvRegLowerIncGamma);

static void BM_Erf(benchmark::State& state) {
  double x = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sf::erf(x));
    x = x < 3.0 ? x + 0.013 : -3.0;
  }
}
BENCHMARK(BM_Erf);
