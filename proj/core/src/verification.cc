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
#include "pdrs/verification.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>

#include "pdrs/combining.h"
#include "pdrs/detectors.h"
#include "pdrs/metrics.h"
#include "pdrs/numerics.h"
#include "pdrs/scenario.h"

namespace pdrs {
namespace {

using Clock = std::chrono::steady_clock;

class SuiteTimer {
 public:
  explicit SuiteTimer(SuiteReport& report) : report_(report), start_(Clock::now()) {}
  ~SuiteTimer() {
    report_.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  SuiteReport& report_;
  Clock::time_point start_;
};

void Record(SuiteReport& report, double error) {
  ++report.instances;
  if (std::isnan(error) || error > report.tolerance) ++report.failures;
  report.worst = std::isnan(error) ? std::numeric_limits<double>::infinity()
                                   : std::max(report.worst, error);
}

int Uniform(RngStream& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.NextBelow(static_cast<std::uint64_t>(hi - lo + 1)));
}

SystemConfig SmallConfig(int m, int l_pilot, int n, int k, double snr_db) {
  SystemConfig cfg;
  cfg.M = m;
  cfg.L = l_pilot;
  cfg.N = n;
  cfg.K = k;
  cfg.zeta = k;
  cfg.l = 1;
  cfg.D = 0;
  cfg.snr_db = snr_db;
  return cfg;
}

std::vector<int> RandomSubset(int n, int size, RngStream& rng) {
  SystemConfig cfg;
  cfg.N = n;
  cfg.K = size;
  return SampleActivity(cfg, rng).active;
}

}  // namespace

SuiteReport MoorePenroseSuite(int instances, double tol, std::uint64_t seed) {
  SuiteReport report{"moore-penrose", 0, 0, 0.0, tol, 0.0};
  SuiteTimer timer(report);
  for (int i = 0; i < instances; ++i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    const int rows = Uniform(rng, 1, 16);
    const int cols = Uniform(rng, 1, 16);
    const int rank = Uniform(rng, 0, std::min(rows, cols));
    const CMatrix a = rank == 0 ? CMatrix::Zero(rows, cols)
                                : CMatrix(ComplexGaussian(rows, rank, 1.0, rng) *
                                          ComplexGaussian(rank, cols, 1.0, rng));
    const CMatrix a_pinv = Pinv(a);
    const CMatrix a_ap = a * a_pinv;
    const CMatrix ap_a = a_pinv * a;
    const double err = std::max(
        {RelativeFrobenius(a_ap * a, a), RelativeFrobenius(ap_a * a_pinv, a_pinv),
         RelativeFrobenius(a_ap.adjoint(), a_ap), RelativeFrobenius(ap_a.adjoint(), ap_a)});
    Record(report, err);
  }
  return report;
}

SuiteReport TallPinvIdentitySuite(int instances, double tol, std::uint64_t seed) {
  SuiteReport report{"tall-pinv-left-inverse", 0, 0, 0.0, tol, 0.0};
  SuiteTimer timer(report);
  for (int i = 0; i < instances; ++i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    const int m = Uniform(rng, 2, 16);
    const int l = Uniform(rng, 1, m - 1);
    const CMatrix y = ComplexGaussian(m, l, 1.0, rng);
    const CMatrix eye = CMatrix::Identity(l, l);
    Record(report, RelativeFrobenius(Pinv(y) * y, eye));
  }
  return report;
}

SuiteReport ProductPinvIdentitySuite(int instances, double tol, std::uint64_t seed) {
  SuiteReport report{"product-pinv-identity", 0, 0, 0.0, tol, 0.0};
  SuiteTimer timer(report);
  for (int i = 0; i < instances; ++i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    const int m = Uniform(rng, 1, 12);
    const int k = Uniform(rng, 1, 12);
    const int n = Uniform(rng, 1, 12);
    const CMatrix a = ComplexGaussian(m, k, 1.0, rng);
    const CMatrix b = ComplexGaussian(k, n, 1.0, rng);
    const CMatrix ab = a * b;
    const CMatrix lhs = Pinv(ab);
    const CMatrix rhs = Pinv(CMatrix(Pinv(a) * ab)) * Pinv(CMatrix(ab * Pinv(b)));
    Record(report, RelativeFrobenius(rhs, lhs));
  }
  return report;
}

SuiteReport DweLsZfEquivalenceSuite(int instances, double tol, std::uint64_t seed) {
  SuiteReport report{"dwe-equals-ls-zf", 0, 0, 0.0, tol, 0.0};
  SuiteTimer timer(report);
  for (int i = 0; i < instances; ++i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    SystemConfig cfg = SmallConfig(16, 8, 24, Uniform(rng, 1, 12), 10.0);
    const PilotPool pool = GenPilotPool(cfg, rng);
    const PdrsCodebook codebook = GenPdrsCodebook(cfg, rng);
    const ActivityPattern activity = SampleActivity(cfg, rng);
    const ReceivedFrame frame = AssembleFrame(cfg, pool, codebook, activity, rng);

    const int xi = Uniform(rng, 8, 12);
    std::vector<int> detected;
    CMatrix p_det;
    do {
      detected = RandomSubset(cfg.N, xi, rng);
      p_det = SelectRows(pool.P, detected);
    } while (Rank(p_det) != cfg.L);

    const CMatrix dwe = DweWeights(frame.Y, p_det, detected).W;
    const CMatrix zf = ZfWeights(LsChannelEstimate(frame.Y, p_det), detected).W;
    Record(report, RelativeFrobenius(zf, dwe));
  }
  return report;
}

SuiteReport OracleInterferenceSuite(int instances, double tol, std::uint64_t seed) {
  SuiteReport report{"dwe-oracle-interference", 0, 0, 0.0, tol, 0.0};
  SuiteTimer timer(report);
  for (int i = 0; i < instances; ++i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    SystemConfig cfg = SmallConfig(16, 8, 24, Uniform(rng, 2, 7),
                                   std::numeric_limits<double>::infinity());
    const PilotPool pool = GenPilotPool(cfg, rng);
    const PdrsCodebook codebook = GenPdrsCodebook(cfg, rng);
    const ActivityPattern activity = SampleActivity(cfg, rng);
    const ReceivedFrame frame = AssembleFrame(cfg, pool, codebook, activity, rng);

    const CMatrix p_a = SelectRows(pool.P, activity.active);
    const CMatrix dwe = DweWeights(frame.Y, p_a, activity.active).W;
    const CMatrix zf = ZfWeights(LsChannelEstimate(frame.Y, p_a), activity.active).W;
    Record(report, RelativeFrobenius(zf, dwe));
  }
  return report;
}

SuiteReport DweIndependenceSuite(int frames, std::uint64_t seed) {
  SuiteReport report{"dwe-detection-independence", 0, 0, 0.0, 0.0, 0.0};
  SuiteTimer timer(report);
  for (int i = 0; i < frames; ++i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    SystemConfig cfg = SmallConfig(32, 16, 64, Uniform(rng, 4, 20), 6.0);
    const PilotPool pool = GenPilotPool(cfg, rng);
    const PdrsCodebook codebook = GenPdrsCodebook(cfg, rng);
    const ActivityPattern activity = SampleActivity(cfg, rng);
    const ReceivedFrame frame = AssembleFrame(cfg, pool, codebook, activity, rng);

    // S is a random set; the superset adds random extra indices.
    const std::vector<int> base = RandomSubset(cfg.N, Uniform(rng, 1, 24), rng);
    std::vector<int> superset = base;
    for (int idx : RandomSubset(cfg.N, Uniform(rng, 1, 32), rng)) {
      if (std::find(base.begin(), base.end(), idx) == base.end()) superset.push_back(idx);
    }
    std::sort(superset.begin(), superset.end());

    const WeightMatrix small = DweWeights(frame.Y, SelectRows(pool.P, base), base);
    const WeightMatrix large = DweWeights(frame.Y, SelectRows(pool.P, superset), superset);
    double mismatches = 0.0;
    for (std::size_t k = 0; k < base.size(); ++k) {
      const Eigen::Index row = large.RowOf(base[k]);
      if (row < 0 || large.W.row(row) != small.W.row(static_cast<Eigen::Index>(k))) {
        mismatches += 1.0;
      }
    }
    Record(report, mismatches);
  }
  return report;
}

SuiteReport NoiselessPdrsSuite(int trials, std::uint64_t seed) {
  SuiteReport report{"noiseless-pdrs-exact", 0, 0, 0.0, 0.0, 0.0};
  SuiteTimer timer(report);
  SystemConfig cfg = SmallConfig(16, 12, 32, 8, std::numeric_limits<double>::infinity());
  cfg.l = 4;
  for (int i = 0; i < trials; ++i) {
    RngStream rng(seed, static_cast<std::uint64_t>(i));
    const PilotPool pool = GenPilotPool(cfg, rng);
    const PdrsCodebook codebook = GenPdrsCodebook(cfg, rng);
    const ActivityPattern activity = SampleActivity(cfg, rng);
    const ReceivedFrame frame = AssembleFrame(cfg, pool, codebook, activity, rng);
    const DetectionResult result = DetectPdrsDwe(frame, pool, codebook, cfg.zeta);
    const TrialMetrics m = DetectionMetrics(result, activity);
    Record(report, static_cast<double>(m.miss + m.false_pos));
  }
  return report;
}

std::vector<SuiteReport> RunLemmaChecks(int iterations, double tol,
                                        std::uint64_t seed) {
  auto pick = [tol](double fallback) { return tol > 0.0 ? tol : fallback; };
  return {
      MoorePenroseSuite(2 * iterations, pick(1e-9), seed),
      TallPinvIdentitySuite(iterations, pick(1e-10), seed + 1),
      ProductPinvIdentitySuite(iterations, pick(1e-8), seed + 2),
      DweLsZfEquivalenceSuite(iterations, pick(1e-8), seed + 3),
      OracleInterferenceSuite(iterations, pick(1e-8), seed + 4),
      DweIndependenceSuite(std::max(1, iterations / 2), seed + 5),
  };
}

std::string FormatReport(const SuiteReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-4s %-28s instances=%d failures=%d worst=%.3e tol=%.1e (%.2fs)",
                r.Passed() ? "PASS" : "FAIL", r.name.c_str(), r.instances, r.failures,
                r.worst, r.tolerance, r.seconds);
  return buf;
}

}  // namespace pdrs
