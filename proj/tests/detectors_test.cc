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
#include "pdrs/detectors.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <gtest/gtest.h>

#include "test_fixtures.h"
#include "test_oracles.h"

namespace pdrs {
namespace {

using testing::kNoiseless;
using testing::MakeScenario;
using testing::SmallConfig;

std::vector<int> Sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

RVector ScoresByIndex(const DetectionResult& r, Eigen::Index n) {
  RVector out = RVector::Constant(n, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < r.support.size(); ++i) out(r.support[i]) = r.scores[i];
  return out;
}

TEST(RankIndicesTest, TiesBreakToLowerIndex) {
  RVector s(5);
  s << 2.0, 1.0, 1.0, 0.5, 1.0;
  EXPECT_EQ(RankIndices(s, 3, true), (std::vector<int>{3, 1, 2}));
  EXPECT_EQ(RankIndices(s, 2, false), (std::vector<int>{0, 1}));
}

TEST(RankIndicesTest, NonFiniteScoresRankLast) {
  RVector s(4);
  s << std::numeric_limits<double>::quiet_NaN(), 3.0,
      std::numeric_limits<double>::infinity(), 1.0;
  EXPECT_EQ(RankIndices(s, 4, true), (std::vector<int>{3, 1, 0, 2}));
  EXPECT_EQ(RankIndices(s, 4, false), (std::vector<int>{1, 3, 0, 2}));
}

TEST(RankIndicesTest, ClampsCount) {
  RVector s = RVector::Zero(3);
  EXPECT_EQ(RankIndices(s, 10, true).size(), 3u);
  EXPECT_TRUE(RankIndices(s, 0, true).empty());
}

TEST(PdrsDweTest, NoiselessResidualsSeparate) {
  const auto s = MakeScenario(SmallConfig(8, 12, 6, 3, kNoiseless), 11);
  const DetectionResult r = DetectPdrsDwe(s.frame, s.pool, s.codebook, 12);
  ASSERT_EQ(r.support.size(), 12u);
  const RVector scores = ScoresByIndex(r, 12);
  for (int i = 0; i < 12; ++i) {
    if (s.activity.Contains(i)) {
      EXPECT_LE(scores(i), 1e-18) << i;
    } else {
      EXPECT_GT(scores(i), 1e-6) << i;
    }
  }
  EXPECT_EQ(Sorted({r.support.begin(), r.support.begin() + 3}), s.activity.active);
}

TEST(PdrsDweTest, MatchesDenseOracle) {
  const auto s = MakeScenario(SmallConfig(8, 12, 6, 3, kNoiseless), 12);
  const DetectionResult r = DetectPdrsDwe(s.frame, s.pool, s.codebook, 12);
  const RVector scores = ScoresByIndex(r, 12);
  // Noiseless: Y^+ Y_R = P_A^H (P_A P_A^H)^{-1} R_A.
  const CMatrix p_a = SelectRows(s.pool.P, s.activity.active);
  const CMatrix r_a = SelectRows(s.codebook.R, s.activity.active);
  const CMatrix t = testing::NaiveProduct(testing::RightInverse(p_a), r_a);
  const CMatrix e = testing::NaiveProduct(s.pool.P, t) - s.codebook.R;
  for (int i = 0; i < 12; ++i) {
    double expected = 0.0;
    for (Eigen::Index c = 0; c < e.cols(); ++c) expected += std::norm(e(i, c));
    EXPECT_NEAR(scores(i), expected, 1e-9 * std::max(1.0, expected)) << i;
  }
}

TEST(PdrsDweTest, SingleUserOrthogonalPool) {
  SystemConfig cfg = SmallConfig(4, 4, 4, 1, kNoiseless, 3);
  PilotPool pool{2.0 * CMatrix::Identity(4, 4)};
  RngStream book_rng(3, kCodebookStream);
  cfg.N = 4;
  const PdrsCodebook book = GenPdrsCodebook(cfg, book_rng);
  RngStream rng(3, 0);
  const ActivityPattern act{{2}};
  const ReceivedFrame f = AssembleFrame(cfg, pool, book, act, rng);
  const DetectionResult r = DetectPdrsDwe(f, pool, book, 4);
  EXPECT_EQ(r.support.front(), 2);
  EXPECT_LE(r.scores.front(), 1e-20);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_NEAR(r.scores[i], 3.0, 1e-9);
}

TEST(PdrsDweTest, SupportPrefixIsStable) {
  const auto s = MakeScenario(SmallConfig(12, 40, 8, 5, 2.0), 13);
  const DetectionResult full = DetectPdrsDwe(s.frame, s.pool, s.codebook, 20);
  for (int z : {0, 1, 5, 9}) {
    const DetectionResult part = DetectPdrsDwe(s.frame, s.pool, s.codebook, z);
    ASSERT_EQ(part.support.size(), static_cast<std::size_t>(z));
    EXPECT_TRUE(std::equal(part.support.begin(), part.support.end(), full.support.begin()));
  }
  for (std::size_t i = 1; i < full.scores.size(); ++i)
    EXPECT_LE(full.scores[i - 1], full.scores[i]);
}

TEST(PdrsDweTest, CheapOrderingMatchesDirect) {
  const auto s = MakeScenario(SmallConfig(16, 60, 10, 6, 4.0, 3), 14);
  const CMatrix y_pinv = Pinv(s.frame.Y);
  const CMatrix direct = (s.pool.P * y_pinv) * s.frame.Y_R;
  const CMatrix cheap = s.pool.P * (y_pinv * s.frame.Y_R);
  EXPECT_LT(RelativeFrobenius(cheap, direct), 1e-10);
}

TEST(PdrsDweTest, WeightsCoverSupport) {
  const auto s = MakeScenario(SmallConfig(12, 30, 8, 4, 6.0), 15);
  const DetectionResult r = DetectPdrsDwe(s.frame, s.pool, s.codebook, 6);
  ASSERT_TRUE(r.weights.has_value());
  EXPECT_EQ(r.weights->index_map, r.support);
  EXPECT_EQ(r.weights->W.rows(), 6);
  EXPECT_EQ(r.weights->W.cols(), 12);
}

TEST(PdrsDweTest, RejectsBadInputs) {
  const auto s = MakeScenario(SmallConfig(6, 10, 4, 2, 3.0), 16);
  EXPECT_THROW(DetectPdrsDwe(s.frame, s.pool, s.codebook, 11), std::invalid_argument);
  EXPECT_THROW(DetectPdrsDwe(s.frame, s.pool, s.codebook, -1), std::invalid_argument);
  PdrsCodebook short_book{s.codebook.R.topRows(5), s.codebook.mode};
  EXPECT_THROW(DetectPdrsDwe(s.frame, s.pool, short_book, 2), std::invalid_argument);
}

TEST(PdrsDweTest, Deterministic) {
  const auto s = MakeScenario(SmallConfig(10, 30, 6, 3, 1.0), 17);
  const DetectionResult a = DetectPdrsDwe(s.frame, s.pool, s.codebook, 5);
  const DetectionResult b = DetectPdrsDwe(s.frame, s.pool, s.codebook, 5);
  EXPECT_EQ(a.support, b.support);
  EXPECT_EQ(a.scores, b.scores);
  EXPECT_TRUE(a.weights->W == b.weights->W);
}

TEST(BompTest, TwoPilotExample) {
  SystemConfig cfg = SmallConfig(3, 2, 2, 1, kNoiseless);
  PilotPool pool{CMatrix::Identity(2, 2)};
  pool.P(1, 0) = Complex(0.6, 0.0);
  pool.P(1, 1) = Complex(0.8, 0.0);
  CMatrix h(3, 2);
  h << Complex(1, 0), Complex(0, 0), Complex(0, 1), Complex(0, 0), Complex(2, 0),
      Complex(0, 0);
  PdrsCodebook book{CMatrix::Ones(2, 2), PdrsMode::kGaussian};
  RngStream rng(1, 0);
  const ReceivedFrame g = AssembleFrameWithChannel(cfg, pool, book, {{0}}, h, rng);
  const DetectionResult r = DetectBomp(g, pool, 1);
  EXPECT_EQ(r.support, (std::vector<int>{0}));
  EXPECT_NEAR(r.scores[0], std::sqrt(6.0), 1e-12);
}

double SubsetResidual(const CMatrix& y, const CMatrix& pool, const std::vector<int>& s) {
  const CMatrix a = SelectRows(pool, s).transpose();
  const CMatrix proj = testing::NaiveProduct(a, testing::NormalEquationsPinv(a));
  const CMatrix yt = y.transpose();
  return (yt - testing::NaiveProduct(proj, yt)).squaredNorm();
}

TEST(BompTest, NoiselessRecoveryMatchesBruteForce) {
  const auto s = MakeScenario(SmallConfig(8, 12, 6, 3, kNoiseless), 21);
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_set;
  for (int a = 0; a < 12; ++a)
    for (int b = a + 1; b < 12; ++b)
      for (int c = b + 1; c < 12; ++c) {
        const double res = SubsetResidual(s.frame.Y, s.pool.P, {a, b, c});
        if (res < best) {
          best = res;
          best_set = {a, b, c};
        }
      }
  EXPECT_EQ(best_set, s.activity.active);
  const DetectionResult r = DetectBomp(s.frame, s.pool, 3);
  EXPECT_EQ(Sorted(r.support), best_set);
  EXPECT_FALSE(r.degenerate_ls);
}

TEST(BompTest, SingleUserPicksStrongestCorrelation) {
  const auto s = MakeScenario(SmallConfig(6, 20, 8, 1, kNoiseless), 22);
  const DetectionResult r = DetectBomp(s.frame, s.pool, 1);
  EXPECT_EQ(r.support, s.activity.active);
}

TEST(BompTest, DegenerateWhenZetaExceedsPilotLength) {
  const auto s = MakeScenario(SmallConfig(6, 20, 4, 3, 5.0), 23);
  const DetectionResult r = DetectBomp(s.frame, s.pool, 7);
  EXPECT_TRUE(r.degenerate_ls);
  ASSERT_EQ(r.support.size(), 7u);
  EXPECT_EQ(std::set<int>(r.support.begin(), r.support.end()).size(), 7u);
}

TEST(BompTest, ZeroZetaIsEmpty) {
  const auto s = MakeScenario(SmallConfig(6, 20, 4, 3, 5.0), 24);
  const DetectionResult r = DetectBomp(s.frame, s.pool, 0);
  EXPECT_TRUE(r.support.empty());
  EXPECT_EQ(r.mult_count, 0u);
}

TEST(FprTest, OrthogonalPoolRecoversChannelPower) {
  SystemConfig cfg = SmallConfig(5, 4, 4, 2, kNoiseless);
  PilotPool pool{2.0 * CMatrix::Identity(4, 4)};
  PdrsCodebook book{CMatrix::Ones(4, 2), PdrsMode::kGaussian};
  RngStream rng(31, 0);
  const ActivityPattern act{{1, 3}};
  const ReceivedFrame f = AssembleFrame(cfg, pool, book, act, rng);
  const RMatrix g = FprGramPinv(pool);
  EXPECT_LT((g - RMatrix::Identity(4, 4) / 16.0).norm(), 1e-14);
  const DetectionResult r = DetectFpr(f, pool, 4, g);
  const RVector scores = ScoresByIndex(r, 4);
  EXPECT_NEAR(scores(1), f.H.col(1).squaredNorm(), 1e-10);
  EXPECT_NEAR(scores(3), f.H.col(3).squaredNorm(), 1e-10);
  EXPECT_NEAR(scores(0), 0.0, 1e-12);
  EXPECT_NEAR(scores(2), 0.0, 1e-12);
  EXPECT_EQ(Sorted({r.support.begin(), r.support.begin() + 2}), act.active);
}

TEST(FprTest, MatchesDenseOracle) {
  const auto s = MakeScenario(SmallConfig(16, 20, 8, 3, kNoiseless), 32);
  const RMatrix g_pinv = FprGramPinv(s.pool);
  const DetectionResult r = DetectFpr(s.frame, s.pool, 20, g_pinv);
  const RVector scores = ScoresByIndex(r, 20);
  // Oracle: explicit loops for p_MF and Gram, Gauss-Jordan solve.
  const CMatrix ph = testing::NaiveAdjoint(s.pool.P);
  const CMatrix mf = testing::NaiveProduct(s.frame.Y, ph);
  const CMatrix gram = testing::NaiveProduct(s.pool.P, ph);
  CMatrix g(20, 20), p_mf(20, 1);
  for (int i = 0; i < 20; ++i) {
    double power = 0.0;
    for (int m = 0; m < 16; ++m) power += std::norm(mf(m, i));
    p_mf(i, 0) = power;
    for (int j = 0; j < 20; ++j) g(i, j) = std::norm(gram(i, j));
  }
  const CMatrix x = testing::GaussSolve(g, p_mf);  // G symmetric
  for (int i = 0; i < 20; ++i) {
    EXPECT_NEAR(scores(i), x(i, 0).real(), 1e-6 * std::max(1.0, std::abs(x(i, 0)))) << i;
  }
}

TEST(FprTest, RejectsWrongGramSize) {
  const auto s = MakeScenario(SmallConfig(6, 10, 4, 2, 3.0), 33);
  EXPECT_THROW(DetectFpr(s.frame, s.pool, 2, RMatrix::Identity(9, 9)),
               std::invalid_argument);
}

TEST(FprTest, CountsRealMultsSeparately) {
  const auto s = MakeScenario(SmallConfig(6, 10, 4, 2, 3.0), 34);
  const DetectionResult r = DetectFpr(s.frame, s.pool, 2, FprGramPinv(s.pool));
  EXPECT_EQ(r.real_mult_count, 100u);
  EXPECT_EQ(r.mult_count, 6u * 4 * 10 + 6 * 10);
}

TEST(OracleTest, ReturnsGroundTruth) {
  const auto s = MakeScenario(SmallConfig(6, 10, 4, 3, 3.0), 35);
  EXPECT_EQ(OracleSupport(s.frame).support, s.activity.active);
  auto empty = MakeScenario(SmallConfig(6, 10, 4, 0, 3.0), 36);
  EXPECT_TRUE(OracleSupport(empty.frame).support.empty());
}

}  // namespace
}  // namespace pdrs
