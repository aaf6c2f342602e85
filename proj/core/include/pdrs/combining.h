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
#ifndef PDRS_COMBINING_H_
#define PDRS_COMBINING_H_

#include <cstdint>
#include <vector>

#include "pdrs/numerics.h"

namespace pdrs {

// One combining row per pilot index.
struct WeightMatrix {
  CMatrix W;
  std::vector<int> index_map;

  // Row of W for a pilot index, or -1 when absent.
  Eigen::Index RowOf(int pilot) const;
};

// Direct weight estimation: W = pool_rows * Y^+. Row k depends only on
// pool_rows.row(k), so adding or removing other indices never changes it.
WeightMatrix DweWeights(const CMatrix& y, const CMatrix& pool_rows,
                        const std::vector<int>& indices);

// Same, reusing a pseudo-inverse the caller already holds.
WeightMatrix DweWeightsFromPinv(const CMatrix& y_pinv, const CMatrix& pool_rows,
                                const std::vector<int>& indices,
                                OpCounter* ops = nullptr);

// H_LS = Y * P_det^+ (M x xi).
CMatrix LsChannelEstimate(const CMatrix& y, const CMatrix& detected_pilots,
                          OpCounter* ops = nullptr);

// W_ZF = H^+ (xi x M). indices label the rows; pass {} for 0..xi-1.
WeightMatrix ZfWeights(const CMatrix& h_est, std::vector<int> indices = {},
                       OpCounter* ops = nullptr);

struct QpskDecisions {
  CMatrix combined;                   // W * Y_D
  std::vector<std::uint8_t> symbols;  // row-major, combined.rows() x cols()
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;

  std::uint8_t At(Eigen::Index r, Eigen::Index c) const {
    return symbols[static_cast<std::size_t>(r * cols + c)];
  }
};

// Combines the data block and hard-decides each entry to the nearest
// Gray-mapped QPSK point.
QpskDecisions DemodQpsk(const WeightMatrix& weights, const CMatrix& y_data,
                        OpCounter* ops = nullptr);

}  // namespace pdrs

#endif  // PDRS_COMBINING_H_
