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
#include "pdrs/combining.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "pdrs/qpsk.h"

namespace pdrs {

Eigen::Index WeightMatrix::RowOf(int pilot) const {
  const auto it = std::find(index_map.begin(), index_map.end(), pilot);
  return it == index_map.end() ? -1 : it - index_map.begin();
}

WeightMatrix DweWeightsFromPinv(const CMatrix& y_pinv, const CMatrix& pool_rows,
                                const std::vector<int>& indices,
                                OpCounter* ops) {
  if (pool_rows.cols() != y_pinv.rows()) {
    throw std::invalid_argument("dwe_weights: pilot length does not match Y");
  }
  if (static_cast<std::size_t>(pool_rows.rows()) != indices.size()) {
    throw std::invalid_argument("dwe_weights: one pilot row per index required");
  }
  WeightMatrix out;
  out.index_map = indices;
  out.W = pool_rows.rows() > 0 ? RowTimesMatrix(pool_rows, y_pinv)
                               : CMatrix(0, y_pinv.cols());
  if (ops) ops->ChargeProduct(pool_rows.rows(), pool_rows.cols(), y_pinv.cols());
  return out;
}

WeightMatrix DweWeights(const CMatrix& y, const CMatrix& pool_rows,
                        const std::vector<int>& indices) {
  if (y.rows() < y.cols()) {
    throw std::invalid_argument("dwe_weights: Y must have M >= L");
  }
  if (pool_rows.cols() != y.cols()) {
    throw std::invalid_argument("dwe_weights: pilot length does not match Y");
  }
  return DweWeightsFromPinv(Pinv(y), pool_rows, indices);
}

CMatrix LsChannelEstimate(const CMatrix& y, const CMatrix& detected_pilots,
                          OpCounter* ops) {
  if (detected_pilots.rows() == 0) {
    throw std::invalid_argument("ls_channel_estimate: empty detected set");
  }
  if (detected_pilots.cols() != y.cols()) {
    throw std::invalid_argument("ls_channel_estimate: pilot length does not match Y");
  }
  const CMatrix p_pinv = Pinv(detected_pilots, std::nullopt, ops);
  if (ops) ops->ChargeProduct(y.rows(), y.cols(), p_pinv.cols());
  return y * p_pinv;
}

WeightMatrix ZfWeights(const CMatrix& h_est, std::vector<int> indices,
                       OpCounter* ops) {
  if (h_est.size() == 0) throw std::invalid_argument("zf_weights: empty channel");
  if (indices.empty()) {
    indices.resize(static_cast<std::size_t>(h_est.cols()));
    std::iota(indices.begin(), indices.end(), 0);
  }
  if (indices.size() != static_cast<std::size_t>(h_est.cols())) {
    throw std::invalid_argument("zf_weights: one index per channel column required");
  }
  return {Pinv(h_est, std::nullopt, ops), std::move(indices)};
}

QpskDecisions DemodQpsk(const WeightMatrix& weights, const CMatrix& y_data,
                        OpCounter* ops) {
  if (weights.W.cols() != y_data.rows()) {
    throw std::invalid_argument("demod_qpsk: weight width does not match Y_D height");
  }
  QpskDecisions out;
  out.combined = weights.W * y_data;
  if (ops) ops->ChargeProduct(weights.W.rows(), weights.W.cols(), y_data.cols());
  out.rows = out.combined.rows();
  out.cols = out.combined.cols();
  out.symbols.resize(static_cast<std::size_t>(out.combined.size()));
  for (Eigen::Index i = 0; i < out.combined.size(); ++i) {
    out.symbols[static_cast<std::size_t>(i)] = qpsk::Decide(out.combined.data()[i]);
  }
  return out;
}

}  // namespace pdrs
