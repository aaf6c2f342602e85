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
#ifndef PDRS_DETECTORS_H_
#define PDRS_DETECTORS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pdrs/combining.h"
#include "pdrs/numerics.h"
#include "pdrs/scenario.h"

namespace pdrs {

struct DetectionResult {
  std::vector<int> support;    // best first, distinct, in [0, N)
  std::vector<double> scores;  // one per support entry
  std::uint64_t mult_count = 0;       // complex multiplications
  std::uint64_t real_mult_count = 0;  // real multiplications (FPR Gram inverse)
  // Set when BOMP runs more iterations than the pilot length allows.
  bool degenerate_ls = false;
  // PDRS only: DWE combining weights for the returned support, computed from
  // the same pseudo-inverse the detector used.
  std::optional<WeightMatrix> weights;
};

// Indices of the k smallest (ascending = true) or largest scores; ties go to
// the lower index. Non-finite scores rank after every finite score.
std::vector<int> RankIndices(const RVector& scores, int k, bool ascending);

// PDRS + DWE one-shot detector. Residual e_n = |p_n Y^+ Y_R - r_n|^2, with the
// product evaluated as P (Y^+ Y_R). Returns the zeta smallest residuals.
DetectionResult DetectPdrsDwe(const ReceivedFrame& frame, const PilotPool& pool,
                              const PdrsCodebook& codebook, int zeta,
                              const CostModel& cost = {});

// Block OMP with zeta greedy iterations and LS residual deflation.
DetectionResult DetectBomp(const ReceivedFrame& frame, const PilotPool& pool,
                           int zeta, const CostModel& cost = {});

// pinv(|P P^H|^2), the N x N real matrix FPR stores in advance.
RMatrix FprGramPinv(const PilotPool& pool);

// Fast power reconstruction: matched filter, per-pilot power, then recovered
// power p_R = p_MF * g_pinv. Returns the zeta largest recovered powers.
DetectionResult DetectFpr(const ReceivedFrame& frame, const PilotPool& pool,
                          int zeta, const RMatrix& g_pinv,
                          const CostModel& cost = {});

// Returns the ground-truth support with zero scores and zero cost.
DetectionResult OracleSupport(const ReceivedFrame& frame);

}  // namespace pdrs

#endif  // PDRS_DETECTORS_H_
