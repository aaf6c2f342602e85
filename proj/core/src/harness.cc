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
#include "pdrs/harness.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pdrs/combining.h"
#include "pdrs/qpsk.h"

namespace pdrs {
namespace {

using Clock = std::chrono::steady_clock;

bool NeedsGramPinv(const std::vector<DetectorKind>& detectors) {
  return std::find(detectors.begin(), detectors.end(), DetectorKind::kFpr) !=
         detectors.end();
}

bool UsesDweCombining(DetectorKind kind) {
  return kind == DetectorKind::kPdrs || kind == DetectorKind::kOracleDwe;
}

DetectionResult Detect(DetectorKind kind, const ExperimentConfig& cfg,
                       const ReceivedFrame& frame, const PilotPool& pool,
                       const PdrsCodebook& codebook, const RMatrix* g_pinv) {
  const int zeta = cfg.system.zeta;
  switch (kind) {
    case DetectorKind::kPdrs:
    case DetectorKind::kPdrsLsZf:
      return DetectPdrsDwe(frame, pool, codebook, zeta, cfg.cost);
    case DetectorKind::kBomp:
      return DetectBomp(frame, pool, zeta, cfg.cost);
    case DetectorKind::kFpr:
      if (g_pinv == nullptr) throw std::invalid_argument("fpr requires g_pinv");
      return DetectFpr(frame, pool, zeta, *g_pinv, cfg.cost);
    case DetectorKind::kOracle:
    case DetectorKind::kOracleDwe:
      return OracleSupport(frame);
  }
  throw std::logic_error("unhandled detector");
}

WeightMatrix CombiningWeights(DetectorKind kind, const DetectionResult& result,
                              const ReceivedFrame& frame, const PilotPool& pool,
                              OpCounter& ops) {
  if (kind == DetectorKind::kPdrs && result.weights) return *result.weights;
  const CMatrix rows = SelectRows(pool.P, result.support);
  if (UsesDweCombining(kind)) {
    const CMatrix y_pinv = Pinv(frame.Y, std::nullopt, &ops);
    return DweWeightsFromPinv(y_pinv, rows, result.support, &ops);
  }
  const CMatrix h_est = LsChannelEstimate(frame.Y, rows, &ops);
  return ZfWeights(h_est, result.support, &ops);
}

void ScoreData(const WeightMatrix& weights, const ReceivedFrame& frame,
               OpCounter& ops, TrialMetrics& m) {
  const auto& active = frame.ground_truth.active;
  if (weights.W.rows() == 0) return;
  const QpskDecisions dec = DemodQpsk(weights, frame.Y_D, &ops);
  for (Eigen::Index r = 0; r < dec.rows; ++r) {
    const int user = weights.index_map[static_cast<std::size_t>(r)];
    const auto it = std::lower_bound(active.begin(), active.end(), user);
    if (it == active.end() || *it != user) continue;  // false positive
    const Eigen::Index truth_row = it - active.begin();
    for (Eigen::Index c = 0; c < dec.cols; ++c) {
      if (dec.At(r, c) != qpsk::Decide(frame.X_D(truth_row, c))) ++m.symbol_errors;
      ++m.symbols;
    }
  }
  m.ser = m.symbols ? static_cast<double>(m.symbol_errors) / m.symbols : 0.0;
  if (frame.H.size() > 0) {
    m.post_sinr_db = PostSinrDb(weights, frame.H, active, frame.sigma2);
  }
}

std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(f);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

std::string ToString(SweepVariable v) {
  switch (v) {
    case SweepVariable::kSnrDb: return "snr_db";
    case SweepVariable::kK: return "K";
    case SweepVariable::kPdrsLength: return "l";
    case SweepVariable::kAlpha: return "alpha";
  }
  return "unknown";
}

SweepVariable ParseSweepVariable(const std::string& name) {
  if (name == "snr_db") return SweepVariable::kSnrDb;
  if (name == "K") return SweepVariable::kK;
  if (name == "l") return SweepVariable::kPdrsLength;
  if (name == "alpha") return SweepVariable::kAlpha;
  throw std::invalid_argument("unknown sweep variable '" + name +
                              "' (expected snr_db, K, l or alpha)");
}

ExperimentConfig ApplySweepValue(const ExperimentConfig& base, SweepVariable v,
                                 double value) {
  ExperimentConfig cfg = base;
  switch (v) {
    case SweepVariable::kSnrDb: cfg.system.snr_db = value; break;
    case SweepVariable::kK: cfg.system.K = static_cast<int>(std::lround(value)); break;
    case SweepVariable::kPdrsLength: cfg.system.l = static_cast<int>(std::lround(value)); break;
    case SweepVariable::kAlpha: cfg.alpha = value; break;
  }
  cfg.Finalize();
  return cfg;
}

void SweepSpec::Validate() const {
  if (detectors.empty()) throw std::invalid_argument("sweep: detector list is empty");
  if (values.empty()) throw std::invalid_argument("sweep: no sweep values");
  for (double v : values) ApplySweepValue(base, variable, v);
}

PilotPool SweepPool(const ExperimentConfig& cfg) {
  RngStream rng(cfg.system.seed, kPoolStream);
  return GenPilotPool(cfg.system, rng);
}

PdrsCodebook SweepCodebook(const ExperimentConfig& cfg) {
  RngStream rng(cfg.system.seed, kCodebookStream);
  return GenPdrsCodebook(cfg.system, rng);
}

std::vector<TrialMetrics> RunTrial(const TrialContext& ctx,
                                   const std::vector<DetectorKind>& detectors,
                                   std::uint64_t trial_index) {
  const ExperimentConfig& cfg = *ctx.config;
  try {
    const PilotPool* pool = ctx.pool;
    const PdrsCodebook* codebook = ctx.codebook;
    const RMatrix* g_pinv = ctx.g_pinv;
    PilotPool own_pool;
    PdrsCodebook own_codebook;
    RMatrix own_g;
    if (cfg.resample_pool) {
      RngStream pool_rng(cfg.system.seed, kPoolStream + ((trial_index + 1) << 8));
      own_pool = GenPilotPool(cfg.system, pool_rng);
      RngStream book_rng(cfg.system.seed, kCodebookStream + ((trial_index + 1) << 8));
      own_codebook = GenPdrsCodebook(cfg.system, book_rng);
      pool = &own_pool;
      codebook = &own_codebook;
      if (NeedsGramPinv(detectors)) {
        own_g = FprGramPinv(own_pool);
        g_pinv = &own_g;
      }
    }

    RngStream rng(cfg.system.seed, trial_index);
    const ActivityPattern activity = SampleActivity(cfg.system, rng);
    const ReceivedFrame frame = AssembleFrame(cfg.system, *pool, *codebook, activity, rng);

    std::vector<TrialMetrics> out;
    out.reserve(detectors.size());
    for (DetectorKind kind : detectors) {
      const auto start = Clock::now();
      const DetectionResult result = Detect(kind, cfg, frame, *pool, *codebook, g_pinv);
      const auto stop = Clock::now();

      TrialMetrics m = DetectionMetrics(result, frame.ground_truth);
      m.wall_clock_ms = std::chrono::duration<double, std::milli>(stop - start).count();
      OpCounter combine{cfg.cost};
      if (!result.support.empty()) {
        const WeightMatrix w = CombiningWeights(kind, result, frame, *pool, combine);
        ScoreData(w, frame, combine, m);
      }
      m.combine_mults = combine.complex_mults;
      out.push_back(std::move(m));
    }
    return out;
  } catch (const std::exception& e) {
    throw std::runtime_error("trial " + std::to_string(trial_index) + ": " + e.what());
  }
}

int WorkerCount() {
  const int hw = std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("PDRS_THREADS")) {
    const int requested = std::atoi(env);
    if (requested > 0) return std::min(requested, hw);
  }
  return hw;
}

std::vector<std::vector<TrialMetrics>> RunTrials(
    const TrialContext& ctx, const std::vector<DetectorKind>& detectors,
    int threads) {
  const auto trials = static_cast<std::uint64_t>(ctx.config->system.trials);
  std::vector<std::vector<TrialMetrics>> results(trials);
  const int workers = static_cast<int>(std::min<std::uint64_t>(
      trials, static_cast<std::uint64_t>(threads > 0 ? threads : WorkerCount())));

  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mu;
  std::uint64_t error_trial = std::numeric_limits<std::uint64_t>::max();
  std::exception_ptr error;

  auto work = [&] {
    for (std::uint64_t t = next++; t < trials && !failed; t = next++) {
      try {
        results[t] = RunTrial(ctx, detectors, t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (t < error_trial) {
          error_trial = t;
          error = std::current_exception();
        }
        failed = true;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return results;
}

std::vector<MetricsTotals> Reduce(
    const std::vector<std::vector<TrialMetrics>>& per_trial, std::size_t detectors) {
  std::vector<MetricsTotals> totals(detectors);
  for (const auto& trial : per_trial) {
    for (std::size_t d = 0; d < detectors && d < trial.size(); ++d) totals[d].Add(trial[d]);
  }
  return totals;
}

std::vector<ResultRow> RunSweep(const SweepSpec& spec) {
  spec.Validate();
  std::vector<ResultRow> rows;
  const bool need_g = NeedsGramPinv(spec.detectors);

  std::optional<PilotPool> pool;
  RMatrix g_pinv;
  int pool_n = -1, pool_l = -1;

  for (double value : spec.values) {
    const ExperimentConfig cfg = ApplySweepValue(spec.base, spec.variable, value);
    const SystemConfig& s = cfg.system;
    if (!pool || pool_n != s.N || pool_l != s.L) {
      pool = SweepPool(cfg);
      pool_n = s.N;
      pool_l = s.L;
      if (need_g && !cfg.resample_pool) g_pinv = FprGramPinv(*pool);
    }
    const PdrsCodebook codebook = SweepCodebook(cfg);
    TrialContext ctx{&cfg, &*pool, &codebook, need_g ? &g_pinv : nullptr};

    std::vector<MetricsTotals> totals;
    std::string error;
    try {
      totals = Reduce(RunTrials(ctx, spec.detectors, spec.threads), spec.detectors.size());
    } catch (const std::exception& e) {
      error = e.what();
      totals.assign(spec.detectors.size(), MetricsTotals{});
    }

    for (std::size_t d = 0; d < spec.detectors.size(); ++d) {
      const MetricsTotals& t = totals[d];
      ResultRow row;
      row.sweep_var = ToString(spec.variable);
      row.sweep_value = value;
      row.snr_db = s.snr_db;
      row.K = s.K;
      row.L = s.L;
      row.N = s.N;
      row.M = s.M;
      row.l = s.l;
      row.zeta = s.zeta;
      row.detector = ToString(spec.detectors[d]);
      row.trials = static_cast<int>(t.trials);
      row.seed = s.seed;
      row.modeled_mults = ComplexityModel(s, spec.detectors[d], cfg.cost).complex_mults;
      if (!error.empty()) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.miss_rate = row.false_pos_rate = row.ser = row.mean_post_sinr_db = nan;
        row.wall_clock_ms = nan;
        row.error = error;
      } else {
        row.miss_rate = t.MissRateReportable() ? t.MissRate()
                                               : std::numeric_limits<double>::quiet_NaN();
        row.false_pos_rate = t.FalsePositiveRate();
        row.ser = t.Ser();
        row.mean_post_sinr_db = t.MeanPostSinrDb();
        row.counted_mults = static_cast<std::uint64_t>(std::llround(t.MeanMults()));
        row.wall_clock_ms = t.trials ? t.wall_clock_ms / static_cast<double>(t.trials) : 0.0;
      }
      rows.push_back(std::move(row));
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    if (a.sweep_value != b.sweep_value) return a.sweep_value < b.sweep_value;
    return a.detector < b.detector;
  });
  return rows;
}

std::string FormatCsv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  for (const ResultRow& r : rows) {
    out << r.sweep_var << ',' << FormatDouble(r.sweep_value) << ','
        << FormatDouble(r.snr_db) << ',' << r.K << ',' << r.L << ',' << r.N << ','
        << r.M << ',' << r.l << ',' << r.zeta << ',' << r.detector << ','
        << r.trials << ',' << FormatDouble(r.miss_rate) << ','
        << FormatDouble(r.false_pos_rate) << ',' << FormatDouble(r.ser) << ','
        << FormatDouble(r.mean_post_sinr_db) << ',' << r.modeled_mults << ','
        << r.counted_mults << ',' << FormatDouble(r.wall_clock_ms) << ',' << r.seed
        << "\n";
  }
  return out.str();
}

void EmitCsv(const std::vector<ResultRow>& rows, const std::filesystem::path& path) {
  if (rows.empty()) throw std::invalid_argument("emit_csv: no rows");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_csv: cannot open " + path.string());
  out << FormatCsv(rows);
  out.flush();
  if (!out) throw std::runtime_error("emit_csv: write failed for " + path.string());
}

std::vector<ResultRow> ParseCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::invalid_argument("csv: missing or unexpected header");
  }
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = SplitCsvLine(line);
    if (f.size() != 19) throw std::invalid_argument("csv: expected 19 fields");
    ResultRow r;
    r.sweep_var = f[0];
    r.sweep_value = ParseDouble(f[1] == "nan" ? "0" : f[1]);
    r.snr_db = ParseDouble(f[2]);
    r.K = std::stoi(f[3]);
    r.L = std::stoi(f[4]);
    r.N = std::stoi(f[5]);
    r.M = std::stoi(f[6]);
    r.l = std::stoi(f[7]);
    r.zeta = std::stoi(f[8]);
    r.detector = f[9];
    r.trials = std::stoi(f[10]);
    auto num = [](const std::string& s) {
      return s == "nan" ? std::numeric_limits<double>::quiet_NaN() : ParseDouble(s);
    };
    r.miss_rate = num(f[11]);
    r.false_pos_rate = num(f[12]);
    r.ser = num(f[13]);
    r.mean_post_sinr_db = num(f[14]);
    r.modeled_mults = std::stoull(f[15]);
    r.counted_mults = std::stoull(f[16]);
    r.wall_clock_ms = num(f[17]);
    r.seed = std::stoull(f[18]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ComplexityLedger> ComplexityReport(const ExperimentConfig& cfg,
                                               const std::vector<DetectorKind>& detectors) {
  const PilotPool pool = SweepPool(cfg);
  const PdrsCodebook codebook = SweepCodebook(cfg);
  RngStream rng(cfg.system.seed, 0);
  const ActivityPattern activity = SampleActivity(cfg.system, rng);
  const ReceivedFrame frame = AssembleFrame(cfg.system, pool, codebook, activity, rng);
  RMatrix g_pinv;
  if (NeedsGramPinv(detectors)) g_pinv = FprGramPinv(pool);
  return MeasureComplexity(cfg.system, detectors, frame, pool, codebook,
                           NeedsGramPinv(detectors) ? &g_pinv : nullptr, cfg.cost);
}

std::string FormatComplexityCsv(const std::vector<ComplexityLedger>& rows,
                                const CostModel& cost) {
  std::ostringstream out;
  out << "detector,modeled_mults,counted_mults,relative_gap,modeled_real_mults,"
         "counted_real_mults,normalizer_K3,modeled_normalized,counted_normalized,"
         "wall_clock_ms,svd_cost\n";
  for (const ComplexityLedger& r : rows) {
    out << ToString(r.detector) << ',' << r.modeled << ',' << r.counted << ','
        << FormatDouble(r.RelativeGap()) << ',' << r.modeled_real << ','
        << r.counted_real << ',' << r.normalizer << ','
        << FormatDouble(r.ModeledNormalized()) << ','
        << FormatDouble(r.CountedNormalized()) << ','
        << FormatDouble(r.wall_clock_ms) << ',' << FormatDouble(cost.svd_constant)
        << "\n";
  }
  return out.str();
}

}  // namespace pdrs
