#include <benchmark/benchmark.h>

#include <cstdint>

#include "binquant/montecarlo.hpp"

using namespace binquant;

static void BM_RunBlock(benchmark::State& state) {
  const NoiseModel hybrid(HybridUniformGaussian{1.0, 1.0});
  const NoiseModel ggd(Ggd{4.0, 1.0});
  const NoiseModel& m = state.range(0) == 0 ? hybrid : ggd;
  const auto n = static_cast<std::size_t>(state.range(1));
  std::uint64_t stream = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_block(m, ChannelModel::perfect(), 0.0, 0.0, n, Seed{1, stream++}));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_RunBlock)->Args({0, 50})->Args({0, 500})->Args({1, 500});

static void BM_SampleGgd(benchmark::State& state) {
  const NoiseModel m(Ggd{4.0, 1.0});
  std::vector<double> out(4096);
  Engine e = make_engine(Seed{1, 0});
  for (auto _ : state) {
    if (state.range(0) == 0) {
      m.fill(e, out);
    } else {
      m.fill_by_inversion(e, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * 4096);
}
BENCHMARK(BM_SampleGgd)->Arg(0)->Arg(1);
