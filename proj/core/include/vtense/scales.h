// Copyright 2026 The vtense Authors.
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

// Hertz <-> Bark conversion (Traunmueller's analytic form).

#ifndef VTENSE_SCALES_H_
#define VTENSE_SCALES_H_

namespace vtense {

// Open interval the Bark value can take: the limits of the formula as
// f -> 0+ and f -> infinity.
inline constexpr double kBarkInfimum = -0.53;
inline constexpr double kBarkSupremum = 26.28;

// Z = 26.81 / (1 + 1960 / f) - 0.53. Throws DomainError unless f is positive
// and finite.
double HzToBark(double hz);

// Algebraic inverse: f = 1960 (Z + 0.53) / (26.28 - Z). Throws DomainError
// unless Z lies strictly inside (kBarkInfimum, kBarkSupremum).
double BarkToHz(double bark);

}  // namespace vtense

#endif  // VTENSE_SCALES_H_
