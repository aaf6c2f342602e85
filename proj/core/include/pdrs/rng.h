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

#ifndef PDRS_RNG_H_
#define PDRS_RNG_H_

#include <array>
#include <cstdint>
#include <utility>

namespace pdrs {

// Counter-based random stream built on Philox4x32-10 (Salmon et al., SC'11).
// The 64-bit seed is the Philox key; the stream id occupies the upper half of
// the 128-bit counter and the draw index the lower half, so each
// (seed, stream_id) pair addresses an independent, order-insensitive
// sequence. Normal variates use the Box-Muller transform so that output is
// bit-reproducible across standard libraries.
//
// A stream is single-owner: never share one instance across threads.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t NextU64();

  // Uniform on the open interval (0, 1), 53-bit resolution.
  double NextUniform();

  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t NextBelow(std::uint64_t bound);

  // Two independent standard normal variates.
  std::pair<double, double> NextNormalPair();

  // Raw Philox4x32-10 block function, exposed for known-answer tests.
  static std::array<std::uint32_t, 4> PhiloxBlock(
      std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

 private:
  void Refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_index_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffered_ = 0;  // 64-bit words left in buffer_ (0, 1 or 2)
};

}  // namespace pdrs

#endif  // PDRS_RNG_H_
