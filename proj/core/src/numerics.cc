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
#include "pdrs/numerics.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

namespace pdrs {
namespace {

void CheckTolerance(double rel_tol) {
  if (!(rel_tol >= 0.0 && rel_tol < 1.0)) {
    throw std::invalid_argument("pinv: rel_tol must lie in [0, 1)");
  }
}

template <typename Matrix>
Matrix PinvImpl(const Matrix& a, std::optional<double> rel_tol) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw std::invalid_argument("pinv: matrix has a zero dimension");
  }
  const double tol = rel_tol.value_or(DefaultPinvTolerance(a.rows(), a.cols()));
  CheckTolerance(tol);

  using Dense = Eigen::Matrix<typename Matrix::Scalar, Eigen::Dynamic,
                              Eigen::Dynamic>;
  Eigen::BDCSVD<Dense> svd(Dense(a), Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "pinv: SVD did not converge for " << a.rows() << "x" << a.cols()
        << " matrix";
    throw NumericalError(msg.str());
  }
  const auto& sigma = svd.singularValues();
  const double cutoff = sigma.size() > 0 ? tol * sigma(0) : 0.0;
  Eigen::Index kept = 0;
  while (kept < sigma.size() && sigma(kept) > cutoff) ++kept;

  Matrix result = Matrix::Zero(a.cols(), a.rows());
  if (kept == 0) return result;
  const auto v = svd.matrixV().leftCols(kept);
  const auto u = svd.matrixU().leftCols(kept);
  const Eigen::VectorXd inv = sigma.head(kept).cwiseInverse();
  result.noalias() = v * inv.asDiagonal() * u.adjoint();
  return result;
}

}  // namespace

std::uint64_t CostModel::PseudoInverse(std::int64_t rows,
                                       std::int64_t cols) const {
  const double big = static_cast<double>(std::max(rows, cols));
  const double small = static_cast<double>(std::min(rows, cols));
  return static_cast<std::uint64_t>(
      std::llround(svd_constant * big * small * small + small * small * small));
}

double DefaultPinvTolerance(Eigen::Index rows, Eigen::Index cols) {
  return 1e-12 * static_cast<double>(std::max(rows, cols));
}

CMatrix Pinv(const CMatrix& a, std::optional<double> rel_tol, OpCounter* ops) {
  CMatrix result = PinvImpl(a, rel_tol);
  if (ops != nullptr) ops->ChargePinv(a.rows(), a.cols());
  return result;
}

RMatrix Pinv(const RMatrix& a, std::optional<double> rel_tol) {
  return PinvImpl(a, rel_tol);
}

Eigen::Index Rank(const CMatrix& a, std::optional<double> rel_tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  const double tol = rel_tol.value_or(DefaultPinvTolerance(a.rows(), a.cols()));
  CheckTolerance(tol);
  const Eigen::MatrixXcd dense = a;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(dense);
  const auto& sigma = svd.singularValues();
  const double cutoff = tol * sigma(0);
  return static_cast<Eigen::Index>(
      std::count_if(sigma.begin(), sigma.end(),
                    [cutoff](double s) { return s > cutoff; }));
}

CMatrix ComplexGaussian(Eigen::Index rows, Eigen::Index cols, double variance,
                        RngStream& rng) {
  if (rows <= 0 || cols <= 0) {
    throw std::invalid_argument("cgauss: dimensions must be positive");
  }
  if (!(variance > 0.0)) {
    throw std::invalid_argument("cgauss: variance must be positive");
  }
  const double scale = std::sqrt(variance / 2.0);
  CMatrix out(rows, cols);
  Complex* data = out.data();
  for (Eigen::Index k = 0; k < out.size(); ++k) {
    const auto [re, im] = rng.NextNormalPair();
    data[k] = Complex(scale * re, scale * im);
  }
  return out;
}

RVector RowNormsSq(const CMatrix& a) {
  if (a.size() == 0) throw std::invalid_argument("row_norms_sq: empty matrix");
  return a.rowwise().squaredNorm();
}

RVector ColNormsSq(const CMatrix& a) {
  if (a.size() == 0) throw std::invalid_argument("col_norms_sq: empty matrix");
  return a.colwise().squaredNorm().transpose();
}

RMatrix Abs2Hadamard(const CMatrix& a) {
  if (a.size() == 0) throw std::invalid_argument("abs2_hadamard: empty matrix");
  return a.cwiseAbs2();
}

CMatrix RowTimesMatrix(const CMatrix& rows, const CMatrix& m) {
  if (rows.cols() != m.rows()) {
    throw std::invalid_argument("row_times_matrix: inner dimension mismatch");
  }
  CMatrix out = CMatrix::Zero(rows.rows(), m.cols());
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index k = 0; k < rows.cols(); ++k) {
      const Complex c = rows(i, k);
      for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) += c * m(k, j);
    }
  }
  return out;
}

double RelativeFrobenius(const CMatrix& a, const CMatrix& b) {
  const double denom = b.norm();
  const double diff = (a - b).norm();
  return denom > 0.0 ? diff / denom : diff;
}

bool AllFinite(const CMatrix& a) {
  return a.allFinite();
}

}  // namespace pdrs
