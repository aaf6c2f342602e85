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
#ifndef PDRS_SCENARIO_H_
#define PDRS_SCENARIO_H_

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "pdrs/numerics.h"
#include "pdrs/rng.h"

namespace pdrs {

enum class PdrsMode { kGaussian, kOrthogonalReuse };

// Whether the PDRS symbols are prepended to the frame (data length stays D)
// or take resource elements from the data segment (data length D - l).
enum class PdrsPlacement { kExtend, kDisplace };

struct SystemConfig {
  int M = 128;          // receive antennas
  int N = 1000;         // pilot pool size
  int L = 96;           // pilot length
  int l = 4;            // PDRS length
  int K = 96;           // active users per frame
  int zeta = 96;        // declared support size
  double snr_db = 4.0;  // +inf means noiseless
  int D = 240;          // data symbols per frame
  PdrsMode pdrs_mode = PdrsMode::kGaussian;
  PdrsPlacement pdrs_placement = PdrsPlacement::kExtend;
  int trials = 2000;
  std::uint64_t seed = 1;

  // Throws std::invalid_argument naming the first violated constraint.
  void Validate() const;

  double Alpha() const { return static_cast<double>(zeta) / K; }
  // sigma^2 = 10^(-snr_db / 10); zero for snr_db = +inf.
  double NoiseVariance() const;
  int DataLength() const;
  bool Noiseless() const { return NoiseVariance() == 0.0; }
};

// Default operating point (M=128, L=96, N=1000, K=96, 4 dB).
SystemConfig DefaultConfig();

struct PilotPool {
  CMatrix P;  // N x L, each row has squared norm L
};

struct PdrsCodebook {
  CMatrix R;  // N x l, each row has squared norm l
  PdrsMode mode = PdrsMode::kGaussian;
};

struct ActivityPattern {
  std::vector<int> active;  // sorted, distinct

  std::vector<std::uint8_t> Flags(int n) const;
  bool Contains(int index) const;
};

struct ReceivedFrame {
  CMatrix Y_R;  // M x l
  CMatrix Y;    // M x L
  CMatrix Y_D;  // M x D
  ActivityPattern ground_truth;
  CMatrix H;    // M x N, empty when loaded from a frame file
  CMatrix X_D;  // K x D QPSK symbols, row order = ground_truth.active
  double sigma2 = 0.0;
};

// Stream ids reserved for per-sweep-point draws; trial t uses stream t.
inline constexpr std::uint64_t kPoolStream = 0xF000000000000001ull;
inline constexpr std::uint64_t kCodebookStream = 0xF000000000000002ull;

// Scales each row of m in place to squared norm target.
void NormalizeRows(CMatrix& m, double target);

PilotPool GenPilotPool(const SystemConfig& cfg, RngStream& rng);
PdrsCodebook GenPdrsCodebook(const SystemConfig& cfg, RngStream& rng);
ActivityPattern SampleActivity(const SystemConfig& cfg, RngStream& rng);

// Draws channel, data and noise from rng and forms the received blocks.
ReceivedFrame AssembleFrame(const SystemConfig& cfg, const PilotPool& pool,
                            const PdrsCodebook& codebook,
                            const ActivityPattern& activity, RngStream& rng);

// Same, with a caller-supplied channel (M x N). Used for hand-built fixtures.
ReceivedFrame AssembleFrameWithChannel(const SystemConfig& cfg,
                                       const PilotPool& pool,
                                       const PdrsCodebook& codebook,
                                       const ActivityPattern& activity,
                                       CMatrix channel, RngStream& rng);

// Rows of m at the given indices, in order.
CMatrix SelectRows(const CMatrix& m, const std::vector<int>& indices);
// Columns of m at the given indices, in order.
CMatrix SelectCols(const CMatrix& m, const std::vector<int>& indices);

std::string ToString(PdrsMode mode);
PdrsMode ParsePdrsMode(const std::string& text);
std::string ToString(PdrsPlacement placement);
PdrsPlacement ParsePdrsPlacement(const std::string& text);

}  // namespace pdrs

#endif  // PDRS_SCENARIO_H_
