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
#include "pdrs/config.h"

#include <cmath>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

namespace pdrs {
namespace {

TEST(ConfigTest, DefaultValues) {
  const ExperimentConfig cfg = DefaultExperiment();
  EXPECT_EQ(cfg.system.M, 128);
  EXPECT_EQ(cfg.system.N, 1000);
  EXPECT_EQ(cfg.system.L, 96);
  EXPECT_EQ(cfg.system.K, 96);
  EXPECT_EQ(cfg.system.zeta, 96);
  EXPECT_EQ(cfg.system.l, 4);
  EXPECT_DOUBLE_EQ(cfg.system.snr_db, 4.0);
  EXPECT_EQ(cfg.cost.svd_constant, 4.0);
}

TEST(ConfigTest, ParsesKeysAndComments) {
  const ExperimentConfig cfg = ParseConfigText(
      "# small\nM = 16\nN=40 # pool\n  L = 8\nl = 1\nK = 4\nalpha = 2\n"
      "snr_db = inf\nD = 10\npdrs_mode = orthogonal-reuse\npdrs_placement = displace\n"
      "trials = 7\nseed = 99\nsvd_cost = 2.5\nresample_pool = true\n");
  EXPECT_EQ(cfg.system.M, 16);
  EXPECT_EQ(cfg.system.N, 40);
  EXPECT_EQ(cfg.system.L, 8);
  EXPECT_EQ(cfg.system.l, 1);
  EXPECT_EQ(cfg.system.zeta, 8);
  EXPECT_TRUE(std::isinf(cfg.system.snr_db));
  EXPECT_EQ(cfg.system.D, 10);
  EXPECT_EQ(cfg.system.pdrs_mode, PdrsMode::kOrthogonalReuse);
  EXPECT_EQ(cfg.system.pdrs_placement, PdrsPlacement::kDisplace);
  EXPECT_EQ(cfg.system.trials, 7);
  EXPECT_EQ(cfg.system.seed, 99u);
  EXPECT_DOUBLE_EQ(cfg.cost.svd_constant, 2.5);
  EXPECT_TRUE(cfg.resample_pool);
}

TEST(ConfigTest, ZetaWithoutAlphaSetsRatio) {
  const ExperimentConfig cfg = ParseConfigText("K = 10\nzeta = 15\n");
  EXPECT_DOUBLE_EQ(cfg.alpha, 1.5);
  EXPECT_EQ(cfg.system.zeta, 15);
  const ExperimentConfig both = ParseConfigText("K = 10\nzeta = 15\nalpha = 1\n");
  EXPECT_EQ(both.system.zeta, 10);
}

TEST(ConfigTest, AlphaRounds) {
  const ExperimentConfig cfg = ParseConfigText("K = 96\nalpha = 1.25\n");
  EXPECT_EQ(cfg.system.zeta, 120);
}

TEST(ConfigTest, ErrorsNameTheLine) {
  try {
    ParseConfigText("M = 16\n\nbogus = 3\n");
    FAIL() << "expected throw";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("bogus"), std::string::npos);
  }
  EXPECT_THROW(ParseConfigText("M 16\n"), std::invalid_argument);
  EXPECT_THROW(ParseConfigText("M = 1.5\n"), std::invalid_argument);
  EXPECT_THROW(ParseConfigText("snr_db = loud\n"), std::invalid_argument);
  EXPECT_THROW(ParseConfigText("resample_pool = maybe\n"), std::invalid_argument);
}

TEST(ConfigTest, RejectsInvalidSystem) {
  EXPECT_THROW(ParseConfigText("L = 1000\n"), std::invalid_argument);
  EXPECT_THROW(ParseConfigText("alpha = 0\n"), std::invalid_argument);
  EXPECT_THROW(ParseConfigText("alpha = 20\n"), std::invalid_argument);
}

TEST(ConfigTest, FormatRoundTrips) {
  const ExperimentConfig a = ParseConfigText("M = 20\nK = 7\nalpha = 1.5\nsnr_db = inf\n");
  const ExperimentConfig b = ParseConfigText(FormatConfigText(a));
  EXPECT_EQ(b.system.M, 20);
  EXPECT_EQ(b.system.zeta, a.system.zeta);
  EXPECT_EQ(b.system.snr_db, a.system.snr_db);
  EXPECT_EQ(FormatConfigText(a), FormatConfigText(b));
}

TEST(ConfigTest, LoadFile) {
  const auto path = std::filesystem::temp_directory_path() / "pdrs_config_test.cfg";
  {
    std::ofstream out(path);
    out << "M = 24\n";
  }
  EXPECT_EQ(LoadConfigFile(path).system.M, 24);
  std::filesystem::remove(path);
  EXPECT_THROW(LoadConfigFile(path), std::runtime_error);
}

TEST(ConfigTest, ParseDoubleAcceptsInfinity) {
  EXPECT_TRUE(std::isinf(ParseDouble("inf")));
  EXPECT_DOUBLE_EQ(ParseDouble("-3.5"), -3.5);
  EXPECT_THROW(ParseDouble("3x"), std::invalid_argument);
  EXPECT_THROW(ParseDouble(""), std::invalid_argument);
}

}  // namespace
}  // namespace pdrs
