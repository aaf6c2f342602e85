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
#ifndef PDRS_NUMERICS_H_
#define PDRS_NUMERICS_H_

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "pdrs/rng.h"

namespace pdrs {

using Complex = std::complex<double>;

// Dense complex matrix, row-major, interleaved (re, im) doubles. Row and
// column vectors are 1xn and nx1 matrices.
using CMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RVector = Eigen::VectorXd;

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cost constants for the multiplication ledger. A pseudo-inverse of an a x b
// matrix is charged svd_constant * max(a,b) * min(a,b)^2 + min(a,b)^3.
struct CostModel {
  double svd_constant = 4.0;

  std::uint64_t Product(std::int64_t a, std::int64_t b, std::int64_t c) const {
    return static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b) *
           static_cast<std::uint64_t>(c);
  }
  std::uint64_t PseudoInverse(std::int64_t rows, std::int64_t cols) const;
};

// Running tally of multiplications charged by instrumented kernels. Complex
// multiplications are the headline figure; real multiplications (e.g. the
// stored FPR Gram inverse) are tracked apart.
struct OpCounter {
  CostModel cost;
  std::uint64_t complex_mults = 0;
  std::uint64_t real_mults = 0;

  void ChargeProduct(std::int64_t a, std::int64_t b, std::int64_t c) {
    complex_mults += cost.Product(a, b, c);
  }
  void ChargePinv(std::int64_t rows, std::int64_t cols) {
    complex_mults += cost.PseudoInverse(rows, cols);
  }
  // |z|^2 is charged as one complex multiplication per entry.
  void ChargeAbs2(std::int64_t entries) {
    complex_mults += static_cast<std::uint64_t>(entries);
  }
};

// Default relative singular-value cutoff: 1e-12 * max(rows, cols).
double DefaultPinvTolerance(Eigen::Index rows, Eigen::Index cols);

// Moore-Penrose pseudo-inverse via SVD. Singular values at or below
// rel_tol * sigma_max are treated as zero. Throws std::invalid_argument on an
// empty input or rel_tol outside [0, 1), NumericalError if the SVD fails.
CMatrix Pinv(const CMatrix& a, std::optional<double> rel_tol = std::nullopt,
             OpCounter* ops = nullptr);
RMatrix Pinv(const RMatrix& a, std::optional<double> rel_tol = std::nullopt);

// Numerical rank with the same cutoff rule as Pinv.
Eigen::Index Rank(const CMatrix& a, std::optional<double> rel_tol = std::nullopt);

// rows x cols matrix of i.i.d. CN(0, variance) entries; real and imaginary
// parts are each N(0, variance / 2).
CMatrix ComplexGaussian(Eigen::Index rows, Eigen::Index cols, double variance,
                        RngStream& rng);

// k-th entry is sum_j |a(k, j)|^2.
RVector RowNormsSq(const CMatrix& a);
// j-th entry is sum_k |a(k, j)|^2.
RVector ColNormsSq(const CMatrix& a);

// Element-wise squared magnitude, (PP^H) o conj(PP^H) for a Gram matrix.
RMatrix Abs2Hadamard(const CMatrix& a);

// row * m evaluated with a fixed left-to-right accumulation order, so each
// output row depends only on its own input row.
CMatrix RowTimesMatrix(const CMatrix& rows, const CMatrix& m);

// Relative Frobenius distance |a - b|_F / |b|_F (absolute when b == 0).
double RelativeFrobenius(const CMatrix& a, const CMatrix& b);

bool AllFinite(const CMatrix& a);

}  // namespace pdrs

#endif  // PDRS_NUMERICS_H_
