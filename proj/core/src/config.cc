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

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace pdrs {
namespace {

std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

long long ParseInteger(const std::string& text) {
  long long v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("expected an integer, got '" + text + "'");
  }
  return v;
}

int ParseInt(const std::string& text) {
  const long long v = ParseInteger(text);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw std::invalid_argument("integer out of range: '" + text + "'");
  }
  return static_cast<int>(v);
}

bool ParseBool(const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw std::invalid_argument("expected a boolean, got '" + text + "'");
}

}  // namespace

double ParseDouble(const std::string& text) {
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw std::invalid_argument("expected a number, got '" + text + "'");
  }
  return v;
}

void ExperimentConfig::Finalize() {
  if (!(alpha > 0.0)) throw std::invalid_argument("config: alpha must be > 0");
  system.zeta = static_cast<int>(std::lround(alpha * system.K));
  system.Validate();
  if (!(cost.svd_constant >= 0.0)) {
    throw std::invalid_argument("config: svd_cost must be >= 0");
  }
}

ExperimentConfig DefaultExperiment() {
  ExperimentConfig cfg;
  cfg.system = DefaultConfig();
  cfg.alpha = 1.0;
  return cfg;
}

ExperimentConfig ParseConfigText(const std::string& text, ExperimentConfig base) {
  ExperimentConfig cfg = std::move(base);
  std::optional<double> alpha;
  std::optional<int> zeta;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = Trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
    }
    const std::string key = Trim(line.substr(0, eq));
    const std::string value = Trim(line.substr(eq + 1));
    try {
      SystemConfig& s = cfg.system;
      if (key == "M") s.M = ParseInt(value);
      else if (key == "N") s.N = ParseInt(value);
      else if (key == "L") s.L = ParseInt(value);
      else if (key == "l") s.l = ParseInt(value);
      else if (key == "K") s.K = ParseInt(value);
      else if (key == "zeta") zeta = ParseInt(value);
      else if (key == "alpha") alpha = ParseDouble(value);
      else if (key == "snr_db") s.snr_db = ParseDouble(value);
      else if (key == "D") s.D = ParseInt(value);
      else if (key == "pdrs_mode") s.pdrs_mode = ParsePdrsMode(value);
      else if (key == "pdrs_placement") s.pdrs_placement = ParsePdrsPlacement(value);
      else if (key == "trials") s.trials = ParseInt(value);
      else if (key == "seed") s.seed = static_cast<std::uint64_t>(ParseInteger(value));
      else if (key == "svd_cost") cfg.cost.svd_constant = ParseDouble(value);
      else if (key == "resample_pool") cfg.resample_pool = ParseBool(value);
      else throw std::invalid_argument("unknown key '" + key + "'");
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": " +
                                  e.what());
    }
  }
  if (alpha) {
    cfg.alpha = *alpha;
  } else if (zeta) {
    cfg.alpha = static_cast<double>(*zeta) / cfg.system.K;
  }
  cfg.Finalize();
  return cfg;
}

ExperimentConfig LoadConfigFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfigText(buffer.str());
}

std::string FormatConfigText(const ExperimentConfig& cfg) {
  const SystemConfig& s = cfg.system;
  std::ostringstream out;
  out << "M = " << s.M << "\nN = " << s.N << "\nL = " << s.L << "\nl = " << s.l
      << "\nK = " << s.K << "\nalpha = " << cfg.alpha << "\nsnr_db = "
      << (std::isinf(s.snr_db) ? std::string("inf") : std::to_string(s.snr_db))
      << "\nD = " << s.D << "\npdrs_mode = " << ToString(s.pdrs_mode)
      << "\npdrs_placement = " << ToString(s.pdrs_placement)
      << "\ntrials = " << s.trials << "\nseed = " << s.seed
      << "\nsvd_cost = " << cfg.cost.svd_constant
      << "\nresample_pool = " << (cfg.resample_pool ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace pdrs
