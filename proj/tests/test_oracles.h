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
// Independent reference computations used only by tests. Nothing here calls
// into the SVD path the library uses.

#ifndef PDRS_TESTS_TEST_ORACLES_H_
#define PDRS_TESTS_TEST_ORACLES_H_

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pdrs/numerics.h"

namespace pdrs::testing {

// Naive triple-loop product.
inline CMatrix NaiveProduct(const CMatrix& a, const CMatrix& b) {
  CMatrix out = CMatrix::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      Complex acc = 0.0;
      for (Eigen::Index k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  return out;
}

inline CMatrix NaiveAdjoint(const CMatrix& a) {
  CMatrix out(a.cols(), a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

// Solves A X = B by Gauss-Jordan elimination with partial pivoting.
inline CMatrix GaussSolve(CMatrix a, CMatrix b) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.rows() != n) throw std::invalid_argument("GaussSolve dims");
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    for (Eigen::Index r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (std::abs(a(pivot, col)) == 0.0) throw std::runtime_error("singular");
    for (Eigen::Index c = 0; c < n; ++c) std::swap(a(col, c), a(pivot, c));
    for (Eigen::Index c = 0; c < b.cols(); ++c) std::swap(b(col, c), b(pivot, c));
    const Complex inv = 1.0 / a(col, col);
    for (Eigen::Index c = 0; c < n; ++c) a(col, c) *= inv;
    for (Eigen::Index c = 0; c < b.cols(); ++c) b(col, c) *= inv;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex f = a(r, col);
      if (f == Complex(0.0)) continue;
      for (Eigen::Index c = 0; c < n; ++c) a(r, c) -= f * a(col, c);
      for (Eigen::Index c = 0; c < b.cols(); ++c) b(r, c) -= f * b(col, c);
    }
  }
  return b;
}

// (A^H A)^{-1} A^H for a full-column-rank A.
inline CMatrix NormalEquationsPinv(const CMatrix& a) {
  const CMatrix ah = NaiveAdjoint(a);
  return GaussSolve(NaiveProduct(ah, a), ah);
}

// A^H (A A^H)^{-1} for a full-row-rank A.
inline CMatrix RightInverse(const CMatrix& a) {
  const CMatrix ah = NaiveAdjoint(a);
  // (A A^H)^{-1} is Hermitian, so A^H (A A^H)^{-1} = (solve(AA^H, A))^H.
  return NaiveAdjoint(GaussSolve(NaiveProduct(a, ah), a));
}

inline double MaxAbsDiff(const CMatrix& a, const CMatrix& b) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

}  // namespace pdrs::testing

#endif  // PDRS_TESTS_TEST_ORACLES_H_
