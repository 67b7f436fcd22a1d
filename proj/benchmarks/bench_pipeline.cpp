#include <benchmark/benchmark.h>

#include "pagrowth/fitting.hpp"
#include "pagrowth/growth_sim.hpp"

namespace {

pagrowth::SimConfig config(std::size_t n, pagrowth::OutDegreeLaw law) {
  pagrowth::SimConfig c;
  c.n_final = n;
  c.m = 3;
  c.out_degree = law;
  return c;
}

void BM_SimulateDegreeOnly(benchmark::State& state) {
  const auto c = config(static_cast<std::size_t>(state.range(0)), pagrowth::OutDegreeLaw::kFixed);
  for (auto _ : state) benchmark::DoNotOptimize(pagrowth::simulate(c, {}));
}

void BM_SimulateHybrid(benchmark::State& state) {
  auto c = config(static_cast<std::size_t>(state.range(0)), pagrowth::OutDegreeLaw::kGeometric);
  c.coreness_refresh = static_cast<std::uint32_t>(state.range(1));
  const pagrowth::KernelSpec k{pagrowth::KernelMode::kHybrid, 0.7, 0.2, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(pagrowth::simulate(c, k));
}

void BM_MeasureSchedule(benchmark::State& state) {
  const auto net = pagrowth::simulate(config(20000, pagrowth::OutDegreeLaw::kGeometric),
                                      {pagrowth::KernelMode::kHybrid, 0.7, 0.2, 1.0});
  const auto schedule = pagrowth::WindowSchedule::yearly_default(net);
  pagrowth::PipelineOptions opts;
  opts.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pagrowth::measure_schedule(net, schedule, opts));
}

}  // namespace

BENCHMARK(BM_SimulateDegreeOnly)->Arg(5000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateHybrid)
    ->Args({5000, 1})
    ->Args({5000, 64})
    ->Args({20000, 64})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MeasureSchedule)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
