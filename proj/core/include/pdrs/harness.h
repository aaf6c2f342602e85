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
#ifndef PDRS_HARNESS_H_
#define PDRS_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "pdrs/config.h"
#include "pdrs/detectors.h"
#include "pdrs/metrics.h"
#include "pdrs/scenario.h"

namespace pdrs {

enum class SweepVariable { kSnrDb, kK, kPdrsLength, kAlpha };

std::string ToString(SweepVariable v);
SweepVariable ParseSweepVariable(const std::string& name);

// Applies one sweep coordinate to a copy of the base config and finalizes it.
ExperimentConfig ApplySweepValue(const ExperimentConfig& base, SweepVariable v,
                                 double value);

struct SweepSpec {
  SweepVariable variable = SweepVariable::kSnrDb;
  std::vector<double> values;
  ExperimentConfig base = DefaultExperiment();
  std::vector<DetectorKind> detectors;
  int threads = 0;  // 0 = WorkerCount()

  void Validate() const;
};

struct ResultRow {
  std::string sweep_var;
  double sweep_value = 0.0;
  double snr_db = 0.0;
  int K = 0, L = 0, N = 0, M = 0, l = 0, zeta = 0;
  std::string detector;
  int trials = 0;
  double miss_rate = 0.0;
  double false_pos_rate = 0.0;
  double ser = 0.0;
  double mean_post_sinr_db = 0.0;
  std::uint64_t modeled_mults = 0;
  std::uint64_t counted_mults = 0;  // per frame, mean over trials
  double wall_clock_ms = 0.0;       // detector time per frame, mean
  std::uint64_t seed = 0;
  std::string error;                // non-empty for a failed sweep point
};

// Everything shared by the trials of one sweep point.
struct TrialContext {
  const ExperimentConfig* config = nullptr;
  const PilotPool* pool = nullptr;
  const PdrsCodebook* codebook = nullptr;
  const RMatrix* g_pinv = nullptr;  // required when FPR is requested
};

// Runs one frame through each detector and its combining path. Trial t draws
// from RngStream(seed, t), so results do not depend on which worker runs it.
std::vector<TrialMetrics> RunTrial(const TrialContext& ctx,
                                   const std::vector<DetectorKind>& detectors,
                                   std::uint64_t trial_index);

// Worker count: PDRS_THREADS if set (capped at hardware concurrency), else
// hardware concurrency.
int WorkerCount();

// Runs trials [0, cfg.trials) across workers; entry t holds trial t. The
// first failing trial is rethrown after all workers stop.
std::vector<std::vector<TrialMetrics>> RunTrials(
    const TrialContext& ctx, const std::vector<DetectorKind>& detectors,
    int threads = 0);

// Reduces per-trial metrics in trial order; one MetricsTotals per detector.
std::vector<MetricsTotals> Reduce(
    const std::vector<std::vector<TrialMetrics>>& per_trial, std::size_t detectors);

// Pool and codebook for a config: fixed streams derived from the seed.
PilotPool SweepPool(const ExperimentConfig& cfg);
PdrsCodebook SweepCodebook(const ExperimentConfig& cfg);

std::vector<ResultRow> RunSweep(const SweepSpec& spec);

inline constexpr const char* kCsvHeader =
    "sweep_var,sweep_value,snr_db,K,L,N,M,l,zeta,detector,trials,miss_rate,"
    "false_pos_rate,ser,mean_post_sinr_db,modeled_mults,counted_mults,"
    "wall_clock_ms,seed";

std::string FormatCsv(const std::vector<ResultRow>& rows);
void EmitCsv(const std::vector<ResultRow>& rows, const std::filesystem::path& path);
std::vector<ResultRow> ParseCsv(const std::string& text);

// Complexity ledger at one config: one measured frame per detector.
std::vector<ComplexityLedger> ComplexityReport(const ExperimentConfig& cfg,
                                               const std::vector<DetectorKind>& detectors);
std::string FormatComplexityCsv(const std::vector<ComplexityLedger>& rows,
                                const CostModel& cost);

}  // namespace pdrs

#endif  // PDRS_HARNESS_H_
