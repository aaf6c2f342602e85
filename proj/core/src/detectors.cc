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
#include "pdrs/detectors.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pdrs {
namespace {

void CheckZeta(int zeta, Eigen::Index n, const char* who) {
  if (zeta < 0 || zeta > n) {
    throw std::invalid_argument(std::string(who) + ": zeta=" + std::to_string(zeta) +
                                " outside [0, N=" + std::to_string(n) + "]");
  }
}

void CheckPilotBlock(const ReceivedFrame& frame, const PilotPool& pool,
                     const char* who) {
  if (frame.Y.cols() != pool.P.cols() || frame.Y.rows() == 0) {
    throw std::invalid_argument(std::string(who) +
                                ": received pilot block does not match pool");
  }
}

}  // namespace

std::vector<int> RankIndices(const RVector& scores, int k, bool ascending) {
  const auto n = static_cast<int>(scores.size());
  k = std::clamp(k, 0, n);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  auto better = [&](int a, int b) {
    const double sa = scores(a), sb = scores(b);
    const bool fa = std::isfinite(sa), fb = std::isfinite(sb);
    if (fa != fb) return fa;
    if (fa && sa != sb) return ascending ? sa < sb : sa > sb;
    return a < b;
  };
  std::partial_sort(order.begin(), order.begin() + k, order.end(), better);
  order.resize(static_cast<std::size_t>(k));
  return order;
}

DetectionResult DetectPdrsDwe(const ReceivedFrame& frame, const PilotPool& pool,
                              const PdrsCodebook& codebook, int zeta,
                              const CostModel& cost) {
  CheckPilotBlock(frame, pool, "detect_pdrs_dwe");
  CheckZeta(zeta, pool.P.rows(), "detect_pdrs_dwe");
  if (codebook.R.rows() != pool.P.rows() || frame.Y_R.cols() != codebook.R.cols() ||
      frame.Y_R.rows() != frame.Y.rows()) {
    throw std::invalid_argument("detect_pdrs_dwe: PDRS block does not match codebook");
  }
  const Eigen::Index m = frame.Y.rows();
  const Eigen::Index pilot_len = frame.Y.cols();
  const Eigen::Index pdrs_len = frame.Y_R.cols();
  const Eigen::Index n = pool.P.rows();

  OpCounter ops{cost};
  const CMatrix y_pinv = Pinv(frame.Y, std::nullopt, &ops);  // L x M

  // Y^+ Y_R first: L x l, so the N-row product only touches l columns.
  const CMatrix combined_pdrs = y_pinv * frame.Y_R;
  ops.ChargeProduct(pilot_len, m, pdrs_len);
  const CMatrix error = pool.P * combined_pdrs - codebook.R;
  ops.ChargeProduct(n, pilot_len, pdrs_len);
  const RVector residual = RowNormsSq(error);
  ops.ChargeAbs2(n * pdrs_len);

  DetectionResult result;
  result.support = RankIndices(residual, zeta, /*ascending=*/true);
  result.scores.reserve(result.support.size());
  for (int idx : result.support) result.scores.push_back(residual(idx));

  result.weights = DweWeightsFromPinv(y_pinv, SelectRows(pool.P, result.support),
                                      result.support, &ops);
  result.mult_count = ops.complex_mults;
  return result;
}

DetectionResult DetectBomp(const ReceivedFrame& frame, const PilotPool& pool,
                           int zeta, const CostModel& cost) {
  CheckPilotBlock(frame, pool, "detect_bomp");
  CheckZeta(zeta, pool.P.rows(), "detect_bomp");
  const Eigen::Index m = frame.Y.rows();
  const Eigen::Index pilot_len = frame.Y.cols();
  const Eigen::Index n = pool.P.rows();

  OpCounter ops{cost};
  DetectionResult result;
  result.degenerate_ls = zeta > pilot_len;

  const CMatrix y_t = frame.Y.transpose();  // L x M
  const CMatrix p_adj = pool.P.adjoint();   // L x N
  CMatrix residual = frame.Y;               // Z^0 = Y, M x L
  std::vector<std::uint8_t> chosen(static_cast<std::size_t>(n), 0);

  for (int t = 0; t < zeta; ++t) {
    // |Z p_n^H|_2 for every candidate pilot n.
    const CMatrix corr = residual * p_adj;
    ops.ChargeProduct(m, pilot_len, n);
    const RVector power = ColNormsSq(corr);
    ops.ChargeAbs2(m * n);

    int best = -1;
    double best_power = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (chosen[static_cast<std::size_t>(i)]) continue;
      const double v = std::isfinite(power(i)) ? power(i) : -1.0;
      if (best < 0 || v > best_power) {
        best = static_cast<int>(i);
        best_power = v;
      }
    }
    chosen[static_cast<std::size_t>(best)] = 1;
    result.support.push_back(best);
    result.scores.push_back(std::sqrt(std::max(best_power, 0.0)));

    // Z^T = Y^T - A (A^+ Y^T) with A = P(s, :)^T.
    const Eigen::Index width = static_cast<Eigen::Index>(result.support.size());
    const CMatrix a = SelectRows(pool.P, result.support).transpose();  // L x t
    const CMatrix a_pinv = Pinv(a, std::nullopt, &ops);
    const CMatrix coeff = a_pinv * y_t;
    ops.ChargeProduct(width, pilot_len, m);
    const CMatrix fitted = a * coeff;
    ops.ChargeProduct(pilot_len, width, m);
    residual = (y_t - fitted).transpose();
  }
  result.mult_count = ops.complex_mults;
  return result;
}

RMatrix FprGramPinv(const PilotPool& pool) {
  const CMatrix gram = pool.P * pool.P.adjoint();
  return Pinv(Abs2Hadamard(gram));
}

DetectionResult DetectFpr(const ReceivedFrame& frame, const PilotPool& pool,
                          int zeta, const RMatrix& g_pinv,
                          const CostModel& cost) {
  CheckPilotBlock(frame, pool, "detect_fpr");
  CheckZeta(zeta, pool.P.rows(), "detect_fpr");
  const Eigen::Index m = frame.Y.rows();
  const Eigen::Index pilot_len = frame.Y.cols();
  const Eigen::Index n = pool.P.rows();
  if (g_pinv.rows() != n || g_pinv.cols() != n) {
    throw std::invalid_argument("detect_fpr: g_pinv must be N x N");
  }

  OpCounter ops{cost};
  const CMatrix matched = frame.Y * pool.P.adjoint();  // H_MF, M x N
  ops.ChargeProduct(m, pilot_len, n);
  const RVector mf_power = ColNormsSq(matched);
  ops.ChargeAbs2(m * n);
  // Row vector p_MF times the stored N x N matrix; real products only.
  const RVector recovered = g_pinv.transpose() * mf_power;
  ops.real_mults += static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);

  DetectionResult result;
  result.support = RankIndices(recovered, zeta, /*ascending=*/false);
  for (int idx : result.support) result.scores.push_back(recovered(idx));
  result.mult_count = ops.complex_mults;
  result.real_mult_count = ops.real_mults;
  return result;
}

DetectionResult OracleSupport(const ReceivedFrame& frame) {
  DetectionResult result;
  result.support = frame.ground_truth.active;
  result.scores.assign(result.support.size(), 0.0);
  return result;
}

}  // namespace pdrs
