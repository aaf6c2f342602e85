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
// pdrs: Monte-Carlo sweeps, single-frame detection, complexity ledger and
// identity checks for the PDRS grant-free detector.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pdrs/config.h"
#include "pdrs/detectors.h"
#include "pdrs/frame_io.h"
#include "pdrs/harness.h"
#include "pdrs/metrics.h"
#include "pdrs/verification.h"

namespace {

using namespace pdrs;

std::vector<double> ParseValues(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(ParseDouble(item));
  }
  return out;
}

ExperimentConfig LoadOrDefault(const std::string& path) {
  return path.empty() ? DefaultExperiment() : LoadConfigFile(path);
}

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << text;
}

int RunSweepVerb(const std::string& config, const std::string& var,
                 const std::string& values, const std::string& detectors,
                 int trials, long long seed, const std::string& out) {
  SweepSpec spec;
  spec.base = LoadOrDefault(config);
  if (trials > 0) spec.base.system.trials = trials;
  if (seed >= 0) spec.base.system.seed = static_cast<std::uint64_t>(seed);
  spec.variable = ParseSweepVariable(var);
  spec.values = values.empty() ? std::vector<double>{spec.base.system.snr_db}
                               : ParseValues(values);
  spec.detectors = ParseDetectorList(detectors);
  const auto rows = RunSweep(spec);
  for (const auto& row : rows) {
    if (!row.error.empty()) {
      std::cerr << "sweep point " << row.sweep_value << " failed: " << row.error << "\n";
    } else if (std::isnan(row.miss_rate)) {
      std::cerr << "note: " << row.detector << " at " << row.sweep_var << "="
                << row.sweep_value
                << " miss rate withheld (standard error above 50% of estimate)\n";
    }
  }
  if (out.empty() || out == "-") {
    std::cout << FormatCsv(rows);
  } else {
    EmitCsv(rows, out);
  }
  return 0;
}

int RunDetectVerb(const std::string& frame_path, const std::string& detector,
                  int zeta) {
  const FrameFile file = ReadFrameFile(frame_path);
  const DetectorKind kind = ParseDetectorKind(detector);
  if (zeta <= 0) zeta = static_cast<int>(file.frame.ground_truth.active.size());
  DetectionResult result;
  switch (kind) {
    case DetectorKind::kPdrs:
    case DetectorKind::kPdrsLsZf:
      result = DetectPdrsDwe(file.frame, file.pool, file.codebook, zeta);
      break;
    case DetectorKind::kBomp:
      result = DetectBomp(file.frame, file.pool, zeta);
      break;
    case DetectorKind::kFpr:
      result = DetectFpr(file.frame, file.pool, zeta, FprGramPinv(file.pool));
      break;
    case DetectorKind::kOracle:
    case DetectorKind::kOracleDwe:
      result = OracleSupport(file.frame);
      break;
  }
  const TrialMetrics m = DetectionMetrics(result, file.frame.ground_truth);
  std::cout << "detector=" << ToString(kind) << " zeta=" << zeta
            << " complex_mults=" << result.mult_count
            << " real_mults=" << result.real_mult_count << "\n";
  std::cout << "rank,pilot,score,active\n";
  for (std::size_t i = 0; i < result.support.size(); ++i) {
    std::printf("%zu,%d,%.6g,%d\n", i, result.support[i], result.scores[i],
                file.frame.ground_truth.Contains(result.support[i]) ? 1 : 0);
  }
  std::cout << "true_pos=" << m.true_pos << " false_pos=" << m.false_pos
            << " miss=" << m.miss << " miss_rate=" << m.per_user_miss_rate << "\n";
  return 0;
}

int RunComplexityVerb(const std::string& config, const std::string& out) {
  const ExperimentConfig cfg = LoadOrDefault(config);
  const std::vector<DetectorKind> detectors = {DetectorKind::kBomp, DetectorKind::kFpr,
                                               DetectorKind::kPdrs};
  const auto rows = ComplexityReport(cfg, detectors);
  WriteText(out, FormatComplexityCsv(rows, cfg.cost));
  auto find = [&](DetectorKind k) -> const ComplexityLedger& {
    for (const auto& r : rows) {
      if (r.detector == k) return r;
    }
    throw std::logic_error("missing ledger row");
  };
  const auto& bomp = find(DetectorKind::kBomp);
  const auto& fpr = find(DetectorKind::kFpr);
  const auto& pdrs = find(DetectorKind::kPdrs);
  std::fprintf(stderr,
               "normalizer K^3 = %llu\nmodeled  BOMP/FPR = %.2f  FPR/PDRS = %.2f\n"
               "counted  BOMP/FPR = %.2f  FPR/PDRS = %.2f\n",
               static_cast<unsigned long long>(pdrs.normalizer),
               static_cast<double>(bomp.modeled) / fpr.modeled,
               static_cast<double>(fpr.modeled) / pdrs.modeled,
               static_cast<double>(bomp.counted) / fpr.counted,
               static_cast<double>(fpr.counted) / pdrs.counted);
  return 0;
}

int RunLemmaVerb(int iterations, double tol, long long seed) {
  bool ok = true;
  for (const SuiteReport& r :
       RunLemmaChecks(iterations, tol, static_cast<std::uint64_t>(seed))) {
    std::cout << FormatReport(r) << "\n";
    ok = ok && r.Passed();
  }
  return ok ? 0 : 1;
}

int RunGenFrameVerb(const std::string& config, const std::string& out,
                    long long trial) {
  const ExperimentConfig cfg = LoadOrDefault(config);
  const PilotPool pool = SweepPool(cfg);
  const PdrsCodebook codebook = SweepCodebook(cfg);
  RngStream rng(cfg.system.seed, static_cast<std::uint64_t>(trial));
  const ActivityPattern activity = SampleActivity(cfg.system, rng);
  const ReceivedFrame frame = AssembleFrame(cfg.system, pool, codebook, activity, rng);
  WriteFrameFile(out, frame, pool, codebook);
  std::cerr << "wrote " << out << " (M=" << cfg.system.M << " N=" << cfg.system.N
            << " L=" << cfg.system.L << " l=" << cfg.system.l
            << " K=" << cfg.system.K << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PDRS grant-free massive-MIMO activity detection simulator"};
  app.require_subcommand(1);

  std::string config, var = "snr_db", values, detectors = "pdrs,bomp,fpr,oracle", out;
  int trials = 0;
  long long seed = -1;
  auto* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep, CSV output");
  sweep->add_option("--config", config, "key = value config file");
  sweep->add_option("--var", var, "snr_db | K | l | alpha");
  sweep->add_option("--values", values, "comma-separated sweep values");
  sweep->add_option("--detectors", detectors,
                    "comma list of pdrs, pdrs-lszf, bomp, fpr, oracle, oracle-dwe");
  sweep->add_option("--trials", trials, "override trials per point");
  sweep->add_option("--seed", seed, "override seed");
  sweep->add_option("--out", out, "CSV path (stdout when omitted)");

  std::string frame_path, detector = "pdrs";
  int zeta = 0;
  auto* detect = app.add_subcommand("detect", "run one detector on a PDRSFRM1 frame");
  detect->add_option("--frame", frame_path, "frame file")->required();
  detect->add_option("--detector", detector, "pdrs | bomp | fpr | oracle");
  detect->add_option("--zeta", zeta, "support size (default: stored K)");

  std::string cx_config, cx_out;
  auto* complexity = app.add_subcommand("complexity", "multiplication ledger CSV");
  complexity->add_option("--config", cx_config, "key = value config file");
  complexity->add_option("--out", cx_out, "CSV path (stdout when omitted)");

  int iterations = 100;
  double tol = 0.0;
  long long lemma_seed = 2021;
  auto* lemma = app.add_subcommand("lemma-check", "pseudo-inverse and DWE identity suites");
  lemma->add_option("--iterations", iterations, "instances per suite");
  lemma->add_option("--tol", tol, "override every suite tolerance");
  lemma->add_option("--seed", lemma_seed, "suite seed");

  std::string gen_config, gen_out;
  long long gen_trial = 0;
  auto* gen = app.add_subcommand("gen-frame", "write one simulated frame as PDRSFRM1");
  gen->add_option("--config", gen_config, "key = value config file");
  gen->add_option("--out", gen_out, "output path")->required();
  gen->add_option("--trial", gen_trial, "trial stream index");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*sweep) return RunSweepVerb(config, var, values, detectors, trials, seed, out);
    if (*detect) return RunDetectVerb(frame_path, detector, zeta);
    if (*complexity) return RunComplexityVerb(cx_config, cx_out);
    if (*lemma) return RunLemmaVerb(iterations, tol, lemma_seed);
    if (*gen) return RunGenFrameVerb(gen_config, gen_out, gen_trial);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
