#include <benchmark/benchmark.h>

#include "optiplan/link_budget.hpp"
#include "optiplan/media.hpp"
#include "optiplan/power_math.hpp"
#include "optiplan/topology.hpp"

namespace {

using namespace optiplan;

void BM_LengthHistogram(benchmark::State& state) {
  const NodeGrid grid{static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), 10.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(length_histogram(grid));
  }
}
BENCHMARK(BM_LengthHistogram)->Arg(6)->Arg(10)->Arg(16);

void BM_ClassifyFabric(benchmark::State& state) {
  const NodeGrid grid{static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), 10.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify_fabric(grid, 10.0, 500.0));
  }
}
BENCHMARK(BM_ClassifyFabric)->Arg(6)->Arg(10);

OpticalPath bench_path() {
  TransmitterSpec tx;
  tx.name = "tx";
  tx.tuning = {33};
  tx.current = 33;
  tx.launch = {PowerMw{1.5}, 16.2};
  tx.rate_gbps = 10.0;
  ReceiverSpec rx;
  rx.name = "rx";
  rx.detector = DetectorType::kApd;
  rx.sensitivity_dbm_at_1e12 = PowerDbm{-26.5};
  return OpticalPath{"bench",
                     tx,
                     {Connector{0.75, ""}, StarCoupler{4, 4, 1.75}, FiberSpan{25.0, 0.4},
                      Awg{8, 3.68, 30, AwgDirection::kDemux}, Connector{0.75, ""}},
                     rx,
                     {}};
}

void BM_ComputeBudget(benchmark::State& state) {
  const OpticalPath path = bench_path();
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_budget(path));
  }
}
BENCHMARK(BM_ComputeBudget);

void BM_AttenuationSweep(benchmark::State& state) {
  const OpticalPath path = bench_path();
  const BerModel model;
  for (auto _ : state) {
    benchmark::DoNotOptimize(attenuation_sweep(path, 0.0, 30.0, 0.1, model));
  }
}
BENCHMARK(BM_AttenuationSweep);

void BM_QFromBer(benchmark::State& state) {
  double ber = 1e-12;
  for (auto _ : state) {
    benchmark::DoNotOptimize(q_from_ber(ber));
    ber = ber < 1e-3 ? ber * 1.001 : 1e-12;
  }
}
BENCHMARK(BM_QFromBer);

}  // namespace

BENCHMARK_MAIN();
