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
#ifndef PDRS_METRICS_H_
#define PDRS_METRICS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "pdrs/combining.h"
#include "pdrs/detectors.h"
#include "pdrs/numerics.h"
#include "pdrs/scenario.h"

namespace pdrs {

// Detector plus data-combining path, as selected on the command line.
//   pdrs        PDRS detection, DWE combining
//   pdrs-lszf   PDRS detection, LS channel estimate + ZF combining
//   bomp, fpr   baseline detection, LS+ZF combining
//   oracle      true support, LS+ZF combining
//   oracle-dwe  true support, DWE combining
enum class DetectorKind { kPdrs, kPdrsLsZf, kBomp, kFpr, kOracle, kOracleDwe };

std::string ToString(DetectorKind kind);
DetectorKind ParseDetectorKind(const std::string& name);
std::vector<DetectorKind> ParseDetectorList(const std::string& csv);

inline constexpr double kSinrCapDb = 300.0;

struct TrialMetrics {
  int K = 0;
  int zeta = 0;
  int true_pos = 0;
  int false_pos = 0;
  int miss = 0;
  double per_user_miss_rate = 0.0;
  std::uint64_t symbol_errors = 0;
  std::uint64_t symbols = 0;  // true-positive symbols only
  double ser = 0.0;
  std::vector<double> post_sinr_db;  // one per true positive
  std::uint64_t mult_count = 0;      // detection, complex
  std::uint64_t real_mult_count = 0;
  std::uint64_t combine_mults = 0;   // weights + data combining, complex
  double wall_clock_ms = 0.0;
};

// Fills the detection fields (true_pos, false_pos, miss, rate, zeta, K).
TrialMetrics DetectionMetrics(const DetectionResult& result,
                              const ActivityPattern& ground_truth);

// Post-combining SINR in dB for every weight row that belongs to an active
// user, in row order:
//   |w_n h_n|^2 / (sum_{j active, j != n} |w_n h_j|^2 + sigma2 |w_n|^2).
// Interference-and-noise-free rows are capped at kSinrCapDb.
std::vector<double> PostSinrDb(const WeightMatrix& weights, const CMatrix& channel,
                               const std::vector<int>& active, double sigma2);

// Running totals over trials; integer sums keep rates independent of
// reduction order.
struct MetricsTotals {
  std::uint64_t trials = 0;
  std::uint64_t active_samples = 0;
  std::uint64_t declared = 0;
  std::uint64_t misses = 0;
  std::uint64_t false_pos = 0;
  std::uint64_t symbol_errors = 0;
  std::uint64_t symbols = 0;
  std::uint64_t sinr_count = 0;
  double sinr_sum_db = 0.0;
  std::uint64_t mult_count = 0;
  std::uint64_t real_mult_count = 0;
  double wall_clock_ms = 0.0;

  void Add(const TrialMetrics& m);
  double MissRate() const;
  double FalsePositiveRate() const;  // false positives per declared index
  double Ser() const;
  double MeanPostSinrDb() const;
  double MeanMults() const;
  // Binomial standard error of MissRate().
  double MissRateStdError() const;
  // False when the standard error exceeds half the estimate.
  bool MissRateReportable() const;
};

struct ModeledCount {
  std::uint64_t complex_mults = 0;
  std::uint64_t real_mults = 0;  // FPR stored-matrix application
};

// Closed-form multiplication counts. A product (a x b)(b x c) costs a*b*c and
// a pseudo-inverse uses CostModel::PseudoInverse.
ModeledCount ComplexityModel(const SystemConfig& cfg, DetectorKind kind,
                             const CostModel& cost = {});

// Grant-based ZF reference, K^3.
std::uint64_t ComplexityNormalizer(const SystemConfig& cfg);

struct ComplexityLedger {
  DetectorKind detector = DetectorKind::kPdrs;
  std::uint64_t counted = 0;
  std::uint64_t modeled = 0;
  std::uint64_t counted_real = 0;
  std::uint64_t modeled_real = 0;
  std::uint64_t normalizer = 1;
  double wall_clock_ms = 0.0;

  double RelativeGap() const;  // |counted - modeled| / modeled
  double CountedNormalized() const;
  double ModeledNormalized() const;
};

// Runs each detector once on the frame with counting enabled.
std::vector<ComplexityLedger> MeasureComplexity(
    const SystemConfig& cfg, const std::vector<DetectorKind>& detectors,
    const ReceivedFrame& frame, const PilotPool& pool,
    const PdrsCodebook& codebook, const RMatrix* g_pinv,
    const CostModel& cost = {});

}  // namespace pdrs

#endif  // PDRS_METRICS_H_
