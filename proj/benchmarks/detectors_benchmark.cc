// Copyright 2026 The PDRS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <benchmark/benchmark.h>

#include "pdrs/config.h"
#include "pdrs/detectors.h"
#include "pdrs/harness.h"

namespace pdrs {
namespace {

struct DefaultFrame {
  ExperimentConfig cfg = DefaultExperiment();
  PilotPool pool = SweepPool(cfg);
  PdrsCodebook codebook = SweepCodebook(cfg);
  RMatrix g_pinv = FprGramPinv(pool);
  ReceivedFrame frame;

  DefaultFrame() {
    RngStream rng(cfg.system.seed, 0);
    const ActivityPattern act = SampleActivity(cfg.system, rng);
    frame = AssembleFrame(cfg.system, pool, codebook, act, rng);
  }
};

const DefaultFrame& Shared() {
  static const DefaultFrame f;
  return f;
}

void BM_Pinv128x96(benchmark::State& state) {
  const CMatrix& y = Shared().frame.Y;
  for (auto _ : state) benchmark::DoNotOptimize(Pinv(y));
}
BENCHMARK(BM_Pinv128x96)->Unit(benchmark::kMillisecond);

void BM_AssembleFrame(benchmark::State& state) {
  const DefaultFrame& f = Shared();
  std::uint64_t t = 0;
  for (auto _ : state) {
    RngStream rng(f.cfg.system.seed, t++);
    const ActivityPattern act = SampleActivity(f.cfg.system, rng);
    benchmark::DoNotOptimize(AssembleFrame(f.cfg.system, f.pool, f.codebook, act, rng));
  }
}
BENCHMARK(BM_AssembleFrame)->Unit(benchmark::kMillisecond);

void BM_DetectPdrs(benchmark::State& state) {
  const DefaultFrame& f = Shared();
  for (auto _ : state) {
    benchmark::DoNotOptimize(DetectPdrsDwe(f.frame, f.pool, f.codebook, f.cfg.system.zeta));
  }
}
BENCHMARK(BM_DetectPdrs)->Unit(benchmark::kMillisecond);

void BM_DetectFpr(benchmark::State& state) {
  const DefaultFrame& f = Shared();
  for (auto _ : state) {
    benchmark::DoNotOptimize(DetectFpr(f.frame, f.pool, f.cfg.system.zeta, f.g_pinv));
  }
}
BENCHMARK(BM_DetectFpr)->Unit(benchmark::kMillisecond);

void BM_DetectBomp(benchmark::State& state) {
  const DefaultFrame& f = Shared();
  for (auto _ : state) {
    benchmark::DoNotOptimize(DetectBomp(f.frame, f.pool, f.cfg.system.zeta));
  }
}
BENCHMARK(BM_DetectBomp)->Unit(benchmark::kMillisecond)->Iterations(2);

void BM_RunTrialPdrs(benchmark::State& state) {
  const DefaultFrame& f = Shared();
  const TrialContext ctx{&f.cfg, &f.pool, &f.codebook, &f.g_pinv};
  std::uint64_t t = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunTrial(ctx, {DetectorKind::kPdrs}, t++));
  }
}
BENCHMARK(BM_RunTrialPdrs)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace pdrs

BENCHMARK_MAIN();
