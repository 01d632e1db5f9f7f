// SPDX-License-Identifier: Apache-2.0
//
// stcm-sense: sensing bounds for space-time-coding metasurface assisted MIMO
// Copyright (C) 2026 The stcm-sense authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "stcm/sweep.hpp"

using namespace stcm;

namespace {

struct Fixture {
  ExperimentConfig cfg = default_config();
  HarmonicResponse stcm = cfg.link.stcm_response();
  GridSpec grid{cfg.link.geometry.bounds(), 4.0};
  std::vector<ScatterPoint> ten = fixed_targets(cfg, TargetLayout::Ten);
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

Execution mode(const benchmark::State& s) { return s.range(0) ? Execution::Parallel : Execution::Serial; }

void BM_CrbMapTen(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(crb_map(f.grid, f.cfg.link, f.stcm, f.ten, PathKind::DB, 0.0, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.grid.size()));
}

void BM_PebMapSingle(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(peb_map(f.grid, f.cfg.link, f.stcm, {}, 0.0, mode(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.grid.size()));
}

void BM_DetectionMap(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        detection_map(f.grid, f.cfg.link, 1.0, 1.0, 1e-4, Combiner::MatchedDespread, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.grid.size()));
}

void BM_ClassificationSweep(benchmark::State& state) {
  const Fixture& f = fixture();
  ClassificationModel m;
  m.hypotheses = f.cfg.hypotheses;
  m.gain = f.cfg.link.loss.gain(100.0);
  const std::vector<double> snr = f.cfg.snr.points();
  for (auto _ : state) benchmark::DoNotOptimize(classification_sweep(m, snr, {1, 2}, 2000, 1, mode(state)));
}

}  // namespace

BENCHMARK(BM_CrbMapTen)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PebMapSingle)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DetectionMap)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassificationSweep)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
