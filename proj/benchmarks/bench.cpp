#include <benchmark/benchmark.h>

#include "urllc/channel.hpp"
#include "urllc/queueing.hpp"
#include "urllc/saddlepoint.hpp"
#include "urllc/sim.hpp"
#include "urllc/vlsf.hpp"

namespace {

using namespace urllc;

void BM_DelayPgfSync(benchmark::State& state) {
  const ServiceModel s = arq_service_model(0.1);
  const QueueConfig q{static_cast<int>(state.range(0)), 1e-3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(delay_pgf_sync(s, q));
  }
}
BENCHMARK(BM_DelayPgfSync)->Arg(20)->Arg(100)->Arg(200);

void BM_InvertCcdf(benchmark::State& state) {
  const ServiceModel s = arq_service_model(0.3);
  const QueueConfig q{static_cast<int>(state.range(0)), 1e-3};
  const RationalPgf g = delay_pgf_sync(s, q);
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.invert_ccdf(50));
  }
}
BENCHMARK(BM_InvertCcdf)->Arg(20)->Arg(100);

void BM_Saddlepoint(benchmark::State& state) {
  const ServiceModel s = arq_service_model(0.3);
  const QueueConfig q{static_cast<int>(state.range(0)), 1e-3};
  const RationalPgf g = delay_pgf_sync(s, q);
  for (auto _ : state) {
    benchmark::DoNotOptimize(saddlepoint_ccdf(g, 12));
  }
}
BENCHMARK(BM_Saddlepoint)->Arg(20)->Arg(100);

void BM_RcusEpsilon(benchmark::State& state) {
  const ChannelSpec spec{1.0, static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(rcus_epsilon(spec, 30, default_alpha_grid(), 20000, 1));
  }
}
BENCHMARK(BM_RcusEpsilon)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_VlsfThresholdCrossing(benchmark::State& state) {
  const ChannelSpec spec{1.0, 25};
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_threshold_crossing(spec, 30, 20.0, 10, 20000, 1));
  }
}
BENCHMARK(BM_VlsfThresholdCrossing)->Unit(benchmark::kMillisecond);

void BM_FcfsSim(benchmark::State& state) {
  const ServiceModel s = arq_service_model(0.5);
  const QueueConfig q{10, 0.01};
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_fcfs_delay(s, q, 100000, 10000, 1, 30));
  }
}
BENCHMARK(BM_FcfsSim)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
