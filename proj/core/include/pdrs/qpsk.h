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
#ifndef PDRS_QPSK_H_
#define PDRS_QPSK_H_

#include <array>
#include <algorithm>
#include <cmath>
#include <cstdint>

#include "pdrs/numerics.h"

namespace pdrs::qpsk {

// Gray-mapped unit-power QPSK. Symbol index bits (b1 b0): b0 selects the sign
// of the real part, b1 the sign of the imaginary part (0 -> +, 1 -> -).
inline constexpr double kAmplitude = 0.70710678118654752440;

inline Complex Point(std::uint8_t symbol) {
  const double re = (symbol & 1u) ? -kAmplitude : kAmplitude;
  const double im = (symbol & 2u) ? -kAmplitude : kAmplitude;
  return {re, im};
}

// Nearest constellation point; the decision boundaries are the two axes.
inline std::uint8_t Decide(Complex z) {
  return static_cast<std::uint8_t>((z.real() < 0.0 ? 1u : 0u) |
                                   (z.imag() < 0.0 ? 2u : 0u));
}

// Distance from z to the closest decision boundary.
inline double BoundaryDistance(Complex z) {
  return std::min(std::abs(z.real()), std::abs(z.imag()));
}

}  // namespace pdrs::qpsk

#endif  // PDRS_QPSK_H_
