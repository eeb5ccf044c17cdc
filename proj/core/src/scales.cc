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

#include "vtense/scales.h"

#include <cmath>
#include <string>

#include "vtense/error.h"

namespace vtense {

namespace {
constexpr double kScale = 26.81;
constexpr double kKneeHz = 1960.0;
}  // namespace

double HzToBark(double hz) {
  if (!std::isfinite(hz) || hz <= 0.0) {
    throw DomainError("hz_to_bark: frequency must be positive and finite, got " +
                      std::to_string(hz));
  }
  return kScale / (1.0 + kKneeHz / hz) + kBarkInfimum;
}

double BarkToHz(double bark) {
  if (!std::isfinite(bark) || bark <= kBarkInfimum || bark >= kBarkSupremum) {
    throw DomainError("bark_to_hz: Bark value must lie in (-0.53, 26.28), got " +
                      std::to_string(bark));
  }
  return kKneeHz * (bark - kBarkInfimum) / (kBarkSupremum - bark);
}

}  // namespace vtense
