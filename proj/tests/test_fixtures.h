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
#ifndef PDRS_TESTS_TEST_FIXTURES_H_
#define PDRS_TESTS_TEST_FIXTURES_H_

#include <cstdint>
#include <limits>

#include "pdrs/scenario.h"

namespace pdrs::testing {

struct Scenario {
  SystemConfig cfg;
  PilotPool pool;
  PdrsCodebook codebook;
  ActivityPattern activity;
  ReceivedFrame frame;
};

inline SystemConfig SmallConfig(int m, int n, int pilot_len, int k, double snr_db,
                                int pdrs_len = 2) {
  SystemConfig cfg;
  cfg.M = m;
  cfg.N = n;
  cfg.L = pilot_len;
  cfg.K = k;
  cfg.zeta = k;
  cfg.l = pdrs_len;
  cfg.D = 16;
  cfg.snr_db = snr_db;
  return cfg;
}

inline constexpr double kNoiseless = std::numeric_limits<double>::infinity();

inline Scenario MakeScenario(const SystemConfig& cfg, std::uint64_t seed) {
  Scenario s;
  s.cfg = cfg;
  RngStream pool_rng(seed, kPoolStream), book_rng(seed, kCodebookStream);
  s.pool = GenPilotPool(cfg, pool_rng);
  s.codebook = GenPdrsCodebook(cfg, book_rng);
  RngStream rng(seed, 0);
  s.activity = SampleActivity(cfg, rng);
  s.frame = AssembleFrame(cfg, s.pool, s.codebook, s.activity, rng);
  return s;
}

}  // namespace pdrs::testing

#endif  // PDRS_TESTS_TEST_FIXTURES_H_
