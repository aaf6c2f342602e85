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
#ifndef PDRS_CONFIG_H_
#define PDRS_CONFIG_H_

#include <filesystem>
#include <string>

#include "pdrs/numerics.h"
#include "pdrs/scenario.h"

namespace pdrs {

// A SystemConfig plus the experiment-level knobs that are not part of a
// single frame.
struct ExperimentConfig {
  SystemConfig system;
  // zeta = round(alpha * K); kept fixed when K is swept.
  double alpha = 1.0;
  CostModel cost;
  // Draw a fresh pool and codebook per trial instead of once per sweep point.
  bool resample_pool = false;

  // Recomputes system.zeta from alpha and K, then validates.
  void Finalize();
};

ExperimentConfig DefaultExperiment();

// Flat "key = value" text, one per line, '#' starts a comment. Keys mirror
// SystemConfig (M, N, L, l, K, zeta, snr_db, D, pdrs_mode, trials, seed) plus
// alpha, pdrs_placement, svd_cost and resample_pool. Giving zeta without alpha
// sets alpha = zeta / K. Unknown keys and malformed lines throw
// std::invalid_argument with the line number.
ExperimentConfig ParseConfigText(const std::string& text,
                                 ExperimentConfig base = DefaultExperiment());
ExperimentConfig LoadConfigFile(const std::filesystem::path& path);

std::string FormatConfigText(const ExperimentConfig& cfg);

// Parses "inf", "+inf" and ordinary numbers.
double ParseDouble(const std::string& text);

}  // namespace pdrs

#endif  // PDRS_CONFIG_H_
