// Copyright 2026 The jerkseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "jerkseg/baselines.hpp"
#include "jerkseg/bench.hpp"
#include "jerkseg/optimizer.hpp"
#include "jerkseg/presets.hpp"

namespace {

using namespace jerkseg;

void BM_DesignSegmentUncached(benchmark::State& state) {
  const ParameterSet set = PickAndPlace();
  for (auto _ : state) {
    ClearSegmentCache();
    benchmark::DoNotOptimize(
        PrecomputeFamily(20.0, set.limits, set.modal, SegmentMethod::kTimeOptimal));
  }
}
BENCHMARK(BM_DesignSegmentUncached)->Unit(benchmark::kMicrosecond);

void BM_PlanCase2(benchmark::State& state) {
  const ParameterSet set = PickAndPlace();
  Plan(0.3, set.limits, set.modal);  // fills the a_best and segment caches
  for (auto _ : state) benchmark::DoNotOptimize(Plan(0.3, set.limits, set.modal));
}
BENCHMARK(BM_PlanCase2)->Unit(benchmark::kMicrosecond);

// Short move: the acceleration search runs and designs new segments.
void BM_PlanShortMove(benchmark::State& state) {
  const ParameterSet set = PickAndPlace();
  for (auto _ : state) {
    ClearSegmentCache();
    benchmark::DoNotOptimize(Plan(0.0015, set.limits, set.modal));
  }
}
BENCHMARK(BM_PlanShortMove)->Unit(benchmark::kMillisecond);

void BM_BestAccelCase2(benchmark::State& state) {
  const ParameterSet set = LabSystem();
  for (auto _ : state) {
    ClearBestAccelCache();
    benchmark::DoNotOptimize(BestAccelCase2(set.limits, set.modal));
  }
}
BENCHMARK(BM_BestAccelCase2)->Unit(benchmark::kMillisecond);

void BM_ZvSCurve(benchmark::State& state) {
  const ParameterSet set = PickAndPlace();
  for (auto _ : state) {
    benchmark::DoNotOptimize(ZvShape(SCurve(0.1, set.limits), set.modal));
  }
}
BENCHMARK(BM_ZvSCurve);

void BM_Sweep(benchmark::State& state) {
  const RunConfig cfg = PresetConfig("pickplace");
  const std::vector<double> zs = LinearGrid(0.001, 0.3, 100);
  SweepDistances(cfg, zs, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(SweepDistances(cfg, zs, static_cast<unsigned>(state.range(0))));
  }
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
