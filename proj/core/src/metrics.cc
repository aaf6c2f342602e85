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
#include "pdrs/metrics.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pdrs {

std::string ToString(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::kPdrs: return "pdrs";
    case DetectorKind::kPdrsLsZf: return "pdrs-lszf";
    case DetectorKind::kBomp: return "bomp";
    case DetectorKind::kFpr: return "fpr";
    case DetectorKind::kOracle: return "oracle";
    case DetectorKind::kOracleDwe: return "oracle-dwe";
  }
  return "unknown";
}

DetectorKind ParseDetectorKind(const std::string& name) {
  for (auto kind : {DetectorKind::kPdrs, DetectorKind::kPdrsLsZf,
                    DetectorKind::kBomp, DetectorKind::kFpr,
                    DetectorKind::kOracle, DetectorKind::kOracleDwe}) {
    if (ToString(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown detector '" + name + "'");
}

std::vector<DetectorKind> ParseDetectorList(const std::string& csv) {
  std::vector<DetectorKind> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(ParseDetectorKind(item));
  }
  return out;
}

TrialMetrics DetectionMetrics(const DetectionResult& result,
                              const ActivityPattern& ground_truth) {
  TrialMetrics m;
  m.K = static_cast<int>(ground_truth.active.size());
  m.zeta = static_cast<int>(result.support.size());
  for (int idx : result.support) {
    if (ground_truth.Contains(idx)) {
      ++m.true_pos;
    } else {
      ++m.false_pos;
    }
  }
  m.miss = m.K - m.true_pos;
  m.per_user_miss_rate = m.K > 0 ? static_cast<double>(m.miss) / m.K : 0.0;
  m.mult_count = result.mult_count;
  m.real_mult_count = result.real_mult_count;
  return m;
}

std::vector<double> PostSinrDb(const WeightMatrix& weights, const CMatrix& channel,
                               const std::vector<int>& active, double sigma2) {
  std::vector<double> out;
  for (Eigen::Index r = 0; r < weights.W.rows(); ++r) {
    const int user = weights.index_map[static_cast<std::size_t>(r)];
    if (!std::binary_search(active.begin(), active.end(), user)) continue;
    const auto w = weights.W.row(r);
    double signal = 0.0;
    double interference = 0.0;
    for (int j : active) {
      const Complex response =
          (w.transpose().array() * channel.col(j).array()).sum();
      const double gain = std::norm(response);
      if (j == user) {
        signal = gain;
      } else {
        interference += gain;
      }
    }
    const double denom = interference + sigma2 * w.squaredNorm();
    double db = kSinrCapDb;
    if (denom > 0.0 && signal > 0.0) {
      db = std::min(kSinrCapDb, 10.0 * std::log10(signal / denom));
    } else if (signal == 0.0) {
      db = -kSinrCapDb;
    }
    out.push_back(db);
  }
  return out;
}

void MetricsTotals::Add(const TrialMetrics& m) {
  ++trials;
  active_samples += static_cast<std::uint64_t>(m.K);
  declared += static_cast<std::uint64_t>(m.zeta);
  misses += static_cast<std::uint64_t>(m.miss);
  false_pos += static_cast<std::uint64_t>(m.false_pos);
  symbol_errors += m.symbol_errors;
  symbols += m.symbols;
  for (double v : m.post_sinr_db) {
    sinr_sum_db += v;
    ++sinr_count;
  }
  mult_count += m.mult_count;
  real_mult_count += m.real_mult_count;
  wall_clock_ms += m.wall_clock_ms;
}

double MetricsTotals::MissRate() const {
  return active_samples ? static_cast<double>(misses) / active_samples : 0.0;
}

double MetricsTotals::FalsePositiveRate() const {
  return declared ? static_cast<double>(false_pos) / declared : 0.0;
}

double MetricsTotals::Ser() const {
  return symbols ? static_cast<double>(symbol_errors) / symbols : 0.0;
}

double MetricsTotals::MeanPostSinrDb() const {
  return sinr_count ? sinr_sum_db / static_cast<double>(sinr_count) : 0.0;
}

double MetricsTotals::MeanMults() const {
  return trials ? static_cast<double>(mult_count) / trials : 0.0;
}

double MetricsTotals::MissRateStdError() const {
  if (active_samples == 0) return 0.0;
  const double p = MissRate();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(active_samples));
}

bool MetricsTotals::MissRateReportable() const {
  return MissRateStdError() <= 0.5 * MissRate();
}

ModeledCount ComplexityModel(const SystemConfig& cfg, DetectorKind kind,
                             const CostModel& cost) {
  const std::int64_t m = cfg.M, n = cfg.N, pilot = cfg.L, pdrs = cfg.l,
                     zeta = cfg.zeta;
  ModeledCount out;
  switch (kind) {
    case DetectorKind::kPdrs:
    case DetectorKind::kPdrsLsZf:
      out.complex_mults = cost.PseudoInverse(m, pilot) +
                          cost.Product(pilot, m, pdrs) +
                          cost.Product(n, pilot, pdrs) +
                          cost.Product(zeta, pilot, m);
      break;
    case DetectorKind::kBomp:
      for (std::int64_t t = 1; t <= zeta; ++t) {
        out.complex_mults += cost.Product(n, pilot, m) +
                             cost.PseudoInverse(pilot, t) +
                             cost.Product(t, pilot, m) +
                             cost.Product(pilot, t, m);
      }
      break;
    case DetectorKind::kFpr:
      out.complex_mults = cost.Product(n, m, pilot) +
                          static_cast<std::uint64_t>(m * n);
      out.real_mults = static_cast<std::uint64_t>(n * n);
      break;
    case DetectorKind::kOracle:
    case DetectorKind::kOracleDwe:
      break;
  }
  return out;
}

std::uint64_t ComplexityNormalizer(const SystemConfig& cfg) {
  const auto k = static_cast<std::uint64_t>(cfg.K);
  return k * k * k;
}

double ComplexityLedger::RelativeGap() const {
  if (modeled == 0) return counted == 0 ? 0.0 : 1.0;
  const double diff = std::abs(static_cast<double>(counted) - static_cast<double>(modeled));
  return diff / static_cast<double>(modeled);
}

double ComplexityLedger::CountedNormalized() const {
  return static_cast<double>(counted) / static_cast<double>(normalizer);
}

double ComplexityLedger::ModeledNormalized() const {
  return static_cast<double>(modeled) / static_cast<double>(normalizer);
}

std::vector<ComplexityLedger> MeasureComplexity(
    const SystemConfig& cfg, const std::vector<DetectorKind>& detectors,
    const ReceivedFrame& frame, const PilotPool& pool,
    const PdrsCodebook& codebook, const RMatrix* g_pinv,
    const CostModel& cost) {
  std::vector<ComplexityLedger> rows;
  for (DetectorKind kind : detectors) {
    ComplexityLedger row;
    row.detector = kind;
    row.normalizer = std::max<std::uint64_t>(1, ComplexityNormalizer(cfg));
    const ModeledCount model = ComplexityModel(cfg, kind, cost);
    row.modeled = model.complex_mults;
    row.modeled_real = model.real_mults;

    const auto start = std::chrono::steady_clock::now();
    DetectionResult result;
    switch (kind) {
      case DetectorKind::kPdrs:
      case DetectorKind::kPdrsLsZf:
        result = DetectPdrsDwe(frame, pool, codebook, cfg.zeta, cost);
        break;
      case DetectorKind::kBomp:
        result = DetectBomp(frame, pool, cfg.zeta, cost);
        break;
      case DetectorKind::kFpr:
        if (g_pinv == nullptr) {
          throw std::invalid_argument("measure_complexity: fpr needs g_pinv");
        }
        result = DetectFpr(frame, pool, cfg.zeta, *g_pinv, cost);
        break;
      case DetectorKind::kOracle:
      case DetectorKind::kOracleDwe:
        result = OracleSupport(frame);
        break;
    }
    const auto stop = std::chrono::steady_clock::now();
    row.counted = result.mult_count;
    row.counted_real = result.real_mult_count;
    row.wall_clock_ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace pdrs
