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
#ifndef PDRS_FRAME_IO_H_
#define PDRS_FRAME_IO_H_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdrs/scenario.h"

namespace pdrs {

// PDRSFRM1 frame file, all fields little-endian:
//   "PDRSFRM1" | u32 M, N, L, l, D, K | f64 sigma2 |
//   Y_R (M x l) | Y (M x L) | Y_D (M x D) | P (N x L) | R (N x l) |
//   K x u32 active indices
// Matrices are row-major (re, im) f64 pairs. The channel and transmitted
// symbols are not stored.
inline constexpr char kFrameMagic[8] = {'P', 'D', 'R', 'S', 'F', 'R', 'M', '1'};

class FrameFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FrameFile {
  ReceivedFrame frame;
  PilotPool pool;
  PdrsCodebook codebook;
};

std::vector<std::uint8_t> EncodeFrame(const ReceivedFrame& frame,
                                      const PilotPool& pool,
                                      const PdrsCodebook& codebook);
// Throws FrameFormatError on a bad magic, a length mismatch or an
// out-of-range active index.
FrameFile DecodeFrame(const std::vector<std::uint8_t>& bytes);

void WriteFrameFile(const std::filesystem::path& path,
                    const ReceivedFrame& frame, const PilotPool& pool,
                    const PdrsCodebook& codebook);
FrameFile ReadFrameFile(const std::filesystem::path& path);

}  // namespace pdrs

#endif  // PDRS_FRAME_IO_H_
