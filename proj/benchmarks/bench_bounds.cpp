#include <benchmark/benchmark.h>

#include "binquant/bounds.hpp"
#include "binquant/threshold_search.hpp"

using namespace binquant;

namespace {

NoiseModel model_for(int64_t which) {
  switch (which) {
    case 0: return NoiseModel(Gaussian{1.0});
    case 1: return NoiseModel(HybridUniformGaussian{1.0, 1.0});
    default: return NoiseModel(Ggd{4.0, 1.0});
  }
}

}  // namespace

static void BM_BOfEps(benchmark::State& state) {
  const NoiseModel m = model_for(state.range(0));
  double e = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(b_of_eps(m, e));
    e = e < 3.0 ? e + 0.001 : 0.0;
  }
}
BENCHMARK(BM_BOfEps)->Arg(0)->Arg(1)->Arg(2);

static void BM_FindOptimalEps(benchmark::State& state) {
  const NoiseModel m = model_for(state.range(0));
  const SearchSpec spec = SearchSpec::default_for(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_optimal_eps(m, ChannelModel::perfect(), spec));
  }
}
BENCHMARK(BM_FindOptimalEps)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_FisherQuadrature(benchmark::State& state) {
  const NoiseModel m = model_for(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(continuous_fisher_info_quadrature(m));
  }
}
BENCHMARK(BM_FisherQuadrature)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);
