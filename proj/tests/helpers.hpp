// Copyright 2026 The mcdec Authors
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

#pragma once

// Shared helpers for the unit tests.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "mcdec/qmat.hpp"

namespace mcdec::testing {

inline constexpr double kPi = std::numbers::pi;

// Haar-random element of U(2) from a normalised complex Gaussian column.
inline Mat2 random_u2(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  Complex a(g(rng), g(rng));
  Complex b(g(rng), g(rng));
  const double norm = std::sqrt(std::norm(a) + std::norm(b));
  a /= norm;
  b /= norm;
  const Complex ph = std::polar(1.0, ang(rng));
  return ph * Mat2{a, -std::conj(b), b, std::conj(a)};
}

inline Mat2 random_su2(std::mt19937_64& rng) {
  Mat2 m = random_u2(rng);
  const Complex s = std::sqrt(m.det());
  return (1.0 / s) * m;
}

inline double dist(const Mat2& a, const Mat2& b) { return max_abs_diff(a, b); }

}  // namespace mcdec::testing
