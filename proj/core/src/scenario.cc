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
#include "pdrs/scenario.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "pdrs/qpsk.h"

namespace pdrs {
namespace {

void Require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("config: ") + what);
}

CMatrix AddNoise(CMatrix signal, double sigma2, RngStream& rng) {
  if (sigma2 > 0.0 && signal.size() > 0) {
    signal += ComplexGaussian(signal.rows(), signal.cols(), sigma2, rng);
  }
  return signal;
}

}  // namespace

void SystemConfig::Validate() const {
  Require(M >= 1, "M must be >= 1");
  Require(L >= 1, "L must be >= 1");
  Require(L < N, "L must be < N");
  Require(K >= 1 && K <= N, "K must lie in [1, N]");
  Require(zeta >= 1 && zeta <= N, "zeta must lie in [1, N]");
  Require(l >= 1, "l must be >= 1");
  Require(D >= 0, "D must be >= 0");
  Require(trials >= 1, "trials must be >= 1");
  Require(!std::isnan(snr_db) && snr_db != -std::numeric_limits<double>::infinity(),
          "snr_db must be a number or +inf");
  Require(pdrs_placement == PdrsPlacement::kExtend || D >= l,
          "displace placement needs D >= l");
}

double SystemConfig::NoiseVariance() const {
  if (std::isinf(snr_db) && snr_db > 0) return 0.0;
  return std::pow(10.0, -snr_db / 10.0);
}

int SystemConfig::DataLength() const {
  return pdrs_placement == PdrsPlacement::kDisplace ? D - l : D;
}

SystemConfig DefaultConfig() {
  SystemConfig cfg;
  cfg.M = 128;
  cfg.L = 96;
  cfg.N = 1000;
  cfg.K = 96;
  cfg.zeta = 96;
  cfg.l = 4;
  cfg.snr_db = 4.0;
  cfg.D = 240;
  return cfg;
}

std::vector<std::uint8_t> ActivityPattern::Flags(int n) const {
  std::vector<std::uint8_t> flags(static_cast<std::size_t>(n), 0);
  for (int i : active) flags.at(static_cast<std::size_t>(i)) = 1;
  return flags;
}

bool ActivityPattern::Contains(int index) const {
  return std::binary_search(active.begin(), active.end(), index);
}

void NormalizeRows(CMatrix& m, double target) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double norm_sq = m.row(i).squaredNorm();
    if (norm_sq > 0.0) m.row(i) *= std::sqrt(target / norm_sq);
  }
}

PilotPool GenPilotPool(const SystemConfig& cfg, RngStream& rng) {
  PilotPool pool{ComplexGaussian(cfg.N, cfg.L, 1.0, rng)};
  NormalizeRows(pool.P, cfg.L);
  return pool;
}

PdrsCodebook GenPdrsCodebook(const SystemConfig& cfg, RngStream& rng) {
  PdrsCodebook book;
  book.mode = cfg.pdrs_mode;
  if (cfg.pdrs_mode == PdrsMode::kGaussian) {
    book.R = ComplexGaussian(cfg.N, cfg.l, 1.0, rng);
    NormalizeRows(book.R, cfg.l);
    return book;
  }
  // Orthogonal reuse: each user picks one of the l columns of sqrt(l) * I_l.
  const double amplitude = std::sqrt(static_cast<double>(cfg.l));
  book.R = CMatrix::Zero(cfg.N, cfg.l);
  for (int i = 0; i < cfg.N; ++i) {
    const auto code = static_cast<Eigen::Index>(
        rng.NextBelow(static_cast<std::uint64_t>(cfg.l)));
    book.R(i, code) = amplitude;
  }
  return book;
}

ActivityPattern SampleActivity(const SystemConfig& cfg, RngStream& rng) {
  if (cfg.K < 0 || cfg.K > cfg.N) {
    throw std::invalid_argument("sample_activity: K must lie in [0, N]");
  }
  // Partial Fisher-Yates over 0..N-1.
  std::vector<int> indices(static_cast<std::size_t>(cfg.N));
  std::iota(indices.begin(), indices.end(), 0);
  for (int i = 0; i < cfg.K; ++i) {
    const auto j = i + static_cast<int>(
                           rng.NextBelow(static_cast<std::uint64_t>(cfg.N - i)));
    std::swap(indices[static_cast<std::size_t>(i)],
              indices[static_cast<std::size_t>(j)]);
  }
  ActivityPattern pattern;
  pattern.active.assign(indices.begin(), indices.begin() + cfg.K);
  std::sort(pattern.active.begin(), pattern.active.end());
  return pattern;
}

CMatrix SelectRows(const CMatrix& m, const std::vector<int>& indices) {
  CMatrix out(static_cast<Eigen::Index>(indices.size()), m.cols());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    out.row(static_cast<Eigen::Index>(k)) = m.row(indices[k]);
  }
  return out;
}

CMatrix SelectCols(const CMatrix& m, const std::vector<int>& indices) {
  CMatrix out(m.rows(), static_cast<Eigen::Index>(indices.size()));
  for (std::size_t k = 0; k < indices.size(); ++k) {
    out.col(static_cast<Eigen::Index>(k)) = m.col(indices[k]);
  }
  return out;
}

ReceivedFrame AssembleFrameWithChannel(const SystemConfig& cfg,
                                       const PilotPool& pool,
                                       const PdrsCodebook& codebook,
                                       const ActivityPattern& activity,
                                       CMatrix channel, RngStream& rng) {
  if (pool.P.rows() != cfg.N || pool.P.cols() != cfg.L ||
      codebook.R.rows() != cfg.N || codebook.R.cols() != cfg.l ||
      channel.rows() != cfg.M || channel.cols() != cfg.N) {
    throw std::invalid_argument("assemble_frame: inputs inconsistent with config");
  }
  ReceivedFrame frame;
  frame.sigma2 = cfg.NoiseVariance();
  frame.ground_truth = activity;
  frame.H = std::move(channel);

  const auto k = static_cast<Eigen::Index>(activity.active.size());
  const int data_len = cfg.DataLength();
  frame.X_D.resize(k, data_len);
  for (Eigen::Index i = 0; i < frame.X_D.size(); ++i) {
    frame.X_D.data()[i] =
        qpsk::Point(static_cast<std::uint8_t>(rng.NextBelow(4)));
  }

  const CMatrix h_active = SelectCols(frame.H, activity.active);
  if (k > 0) {
    frame.Y_R = h_active * SelectRows(codebook.R, activity.active);
    frame.Y = h_active * SelectRows(pool.P, activity.active);
    frame.Y_D = h_active * frame.X_D;
  } else {
    frame.Y_R = CMatrix::Zero(cfg.M, cfg.l);
    frame.Y = CMatrix::Zero(cfg.M, cfg.L);
    frame.Y_D = CMatrix::Zero(cfg.M, data_len);
  }
  frame.Y_R = AddNoise(std::move(frame.Y_R), frame.sigma2, rng);
  frame.Y = AddNoise(std::move(frame.Y), frame.sigma2, rng);
  frame.Y_D = AddNoise(std::move(frame.Y_D), frame.sigma2, rng);
  return frame;
}

ReceivedFrame AssembleFrame(const SystemConfig& cfg, const PilotPool& pool,
                            const PdrsCodebook& codebook,
                            const ActivityPattern& activity, RngStream& rng) {
  CMatrix channel = ComplexGaussian(cfg.M, cfg.N, 1.0, rng);
  return AssembleFrameWithChannel(cfg, pool, codebook, activity,
                                  std::move(channel), rng);
}

std::string ToString(PdrsMode mode) {
  return mode == PdrsMode::kGaussian ? "gaussian" : "orthogonal-reuse";
}

PdrsMode ParsePdrsMode(const std::string& text) {
  if (text == "gaussian") return PdrsMode::kGaussian;
  if (text == "orthogonal-reuse") return PdrsMode::kOrthogonalReuse;
  throw std::invalid_argument("unknown pdrs_mode '" + text + "'");
}

std::string ToString(PdrsPlacement placement) {
  return placement == PdrsPlacement::kExtend ? "extend" : "displace";
}

PdrsPlacement ParsePdrsPlacement(const std::string& text) {
  if (text == "extend") return PdrsPlacement::kExtend;
  if (text == "displace") return PdrsPlacement::kDisplace;
  throw std::invalid_argument("unknown pdrs_placement '" + text + "'");
}

}  // namespace pdrs
