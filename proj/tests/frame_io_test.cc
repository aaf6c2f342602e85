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
#include "pdrs/frame_io.h"

#include <cstring>
#include <filesystem>
#include <limits>

#include <gtest/gtest.h>

namespace pdrs {
namespace {

struct Fixture {
  SystemConfig cfg;
  PilotPool pool;
  PdrsCodebook book;
  ReceivedFrame frame;
};

Fixture MakeFixture(std::uint64_t seed, int m, int n, int l_pilot, int l, int k, int d) {
  Fixture f;
  f.cfg.M = m;
  f.cfg.N = n;
  f.cfg.L = l_pilot;
  f.cfg.l = l;
  f.cfg.K = k;
  f.cfg.zeta = k;
  f.cfg.D = d;
  f.cfg.snr_db = 5.0;
  RngStream rng(seed, 0);
  f.pool = GenPilotPool(f.cfg, rng);
  f.book = GenPdrsCodebook(f.cfg, rng);
  const ActivityPattern act = SampleActivity(f.cfg, rng);
  f.frame = AssembleFrame(f.cfg, f.pool, f.book, act, rng);
  return f;
}

TEST(FrameIoTest, HeaderLayoutIsLittleEndian) {
  const Fixture f = MakeFixture(1, 3, 7, 2, 1, 2, 4);
  const auto bytes = EncodeFrame(f.frame, f.pool, f.book);
  ASSERT_GE(bytes.size(), 40u);
  EXPECT_EQ(std::memcmp(bytes.data(), "PDRSFRM1", 8), 0);
  const std::uint32_t expect[6] = {3, 7, 2, 1, 4, 2};
  for (int i = 0; i < 6; ++i) {
    const std::size_t off = 8 + 4 * static_cast<std::size_t>(i);
    const std::uint32_t v = bytes[off] | (bytes[off + 1] << 8) | (bytes[off + 2] << 16) |
                            (static_cast<std::uint32_t>(bytes[off + 3]) << 24);
    EXPECT_EQ(v, expect[i]) << "field " << i;
  }
  const std::size_t complex_entries = 3 * 1 + 3 * 2 + 3 * 4 + 7 * 2 + 7 * 1;
  EXPECT_EQ(bytes.size(), 40 + 16 * complex_entries + 4 * 2);
}

// Property: encode/decode reproduces every stored field bit-exactly for a
// spread of random shapes.
TEST(FrameIoTest, RoundTripPreservesFields) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    RngStream shape(99, s);
    const int l_pilot = 1 + static_cast<int>(shape.NextBelow(6));
    const int n = l_pilot + 1 + static_cast<int>(shape.NextBelow(10));
    const int k = 1 + static_cast<int>(shape.NextBelow(static_cast<std::uint64_t>(n)));
    const Fixture f = MakeFixture(s, 1 + static_cast<int>(shape.NextBelow(8)), n, l_pilot,
                                  1 + static_cast<int>(shape.NextBelow(4)), k,
                                  static_cast<int>(shape.NextBelow(5)));
    const FrameFile back = DecodeFrame(EncodeFrame(f.frame, f.pool, f.book));
    EXPECT_TRUE(back.frame.Y == f.frame.Y);
    EXPECT_TRUE(back.frame.Y_R == f.frame.Y_R);
    EXPECT_TRUE(back.frame.Y_D == f.frame.Y_D);
    EXPECT_TRUE(back.pool.P == f.pool.P);
    EXPECT_TRUE(back.codebook.R == f.book.R);
    EXPECT_EQ(back.frame.sigma2, f.frame.sigma2);
    EXPECT_EQ(back.frame.ground_truth.active, f.frame.ground_truth.active);
    EXPECT_EQ(back.frame.H.size(), 0);
  }
}

TEST(FrameIoTest, RejectsBadMagic) {
  const Fixture f = MakeFixture(2, 2, 4, 2, 1, 1, 1);
  auto bytes = EncodeFrame(f.frame, f.pool, f.book);
  bytes[7] = '2';
  EXPECT_THROW(DecodeFrame(bytes), FrameFormatError);
  EXPECT_THROW(DecodeFrame({}), FrameFormatError);
}

TEST(FrameIoTest, RejectsLengthMismatch) {
  const Fixture f = MakeFixture(3, 2, 4, 2, 1, 1, 1);
  auto bytes = EncodeFrame(f.frame, f.pool, f.book);
  auto shorter = bytes;
  shorter.pop_back();
  EXPECT_THROW(DecodeFrame(shorter), FrameFormatError);
  bytes.push_back(0);
  EXPECT_THROW(DecodeFrame(bytes), FrameFormatError);
}

TEST(FrameIoTest, RejectsOutOfRangeIndex) {
  const Fixture f = MakeFixture(4, 2, 4, 2, 1, 1, 1);
  auto bytes = EncodeFrame(f.frame, f.pool, f.book);
  bytes[bytes.size() - 4] = 0xff;
  EXPECT_THROW(DecodeFrame(bytes), FrameFormatError);
}

TEST(FrameIoTest, FileRoundTrip) {
  const Fixture f = MakeFixture(5, 4, 9, 3, 2, 3, 6);
  const auto path = std::filesystem::temp_directory_path() / "pdrs_frame_io_test.bin";
  WriteFrameFile(path, f.frame, f.pool, f.book);
  const FrameFile back = ReadFrameFile(path);
  EXPECT_TRUE(back.frame.Y == f.frame.Y);
  std::filesystem::remove(path);
  EXPECT_THROW(ReadFrameFile(path), std::runtime_error);
}

}  // namespace
}  // namespace pdrs
