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
#ifndef PDRS_VERIFICATION_H_
#define PDRS_VERIFICATION_H_

#include <cstdint>
#include <string>
#include <vector>

namespace pdrs {

// Outcome of one randomized identity suite.
struct SuiteReport {
  std::string name;
  int instances = 0;
  int failures = 0;
  double worst = 0.0;      // largest observed error
  double tolerance = 0.0;
  double seconds = 0.0;

  bool Passed() const { return instances > 0 && failures == 0; }
};

// The four Moore-Penrose conditions on random matrices with dims <= 16 and
// mixed rank; error is relative Frobenius.
SuiteReport MoorePenroseSuite(int instances, double tol, std::uint64_t seed);

// Y^+ Y = I for random full-column-rank tall matrices.
SuiteReport TallPinvIdentitySuite(int instances, double tol, std::uint64_t seed);

// (AB)^+ = (A^+ A B)^+ (A B B^+)^+ for random conformable A, B.
SuiteReport ProductPinvIdentitySuite(int instances, double tol, std::uint64_t seed);

// DWE versus LS + ZF with a detected set of xi >= L pilots, noisy frames
// (M=16, L=8, N=24, xi in 8..12).
SuiteReport DweLsZfEquivalenceSuite(int instances, double tol, std::uint64_t seed);

// Noiseless, oracle detection, K in 2..7 < L=8: P_A Y^+ = (Y P_A^+)^+.
SuiteReport OracleInterferenceSuite(int instances, double tol, std::uint64_t seed);

// DWE rows for S are bit-identical when extra indices are requested.
SuiteReport DweIndependenceSuite(int frames, std::uint64_t seed);

// Noiseless PDRS detection at M=16, L=12, N=32, K=zeta=8: counts trials with
// any miss or false positive.
SuiteReport NoiselessPdrsSuite(int trials, std::uint64_t seed);

// Everything the lemma-check verb runs. A positive tol overrides each
// suite's default tolerance.
std::vector<SuiteReport> RunLemmaChecks(int iterations, double tol,
                                        std::uint64_t seed);

std::string FormatReport(const SuiteReport& report);

}  // namespace pdrs

#endif  // PDRS_VERIFICATION_H_
