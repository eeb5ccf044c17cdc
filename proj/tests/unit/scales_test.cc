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
#include <limits>

#include <gtest/gtest.h>

#include "oracles.h"
#include "vtense/error.h"

namespace vtense {
namespace {

TEST(HzToBark, ReferencePoints) {
  EXPECT_NEAR(HzToBark(1960.0), 12.875, 1e-12);
  EXPECT_NEAR(HzToBark(1000.0), 8.52743243243243, 1e-10);
}

TEST(HzToBark, ApproachesInfimumNearZero) {
  EXPECT_GT(HzToBark(1e-9), kBarkInfimum);
  EXPECT_NEAR(HzToBark(1e-9), kBarkInfimum, 1e-9);
  EXPECT_LT(HzToBark(1e12), kBarkSupremum);
}

TEST(HzToBark, RejectsNonPositiveAndNonFinite) {
  EXPECT_THROW(HzToBark(0.0), DomainError);
  EXPECT_THROW(HzToBark(-10.0), DomainError);
  EXPECT_THROW(HzToBark(std::numeric_limits<double>::infinity()), DomainError);
  EXPECT_THROW(HzToBark(std::numeric_limits<double>::quiet_NaN()), DomainError);
}

TEST(BarkToHz, ReferencePointsAndBounds) {
  EXPECT_NEAR(BarkToHz(12.875), 1960.0, 1e-9);
  EXPECT_NEAR(BarkToHz(HzToBark(440.0)) / 440.0, 1.0, 1e-6);
  EXPECT_THROW(BarkToHz(26.28), DomainError);
  EXPECT_THROW(BarkToHz(-0.53), DomainError);
  EXPECT_THROW(BarkToHz(30.0), DomainError);
  EXPECT_THROW(BarkToHz(std::nan("")), DomainError);
}

TEST(HzToBark, MatchesLongDoubleEvaluation) {
  for (int i = 0; i < 1000; ++i) {
    const double f = 50.0 + (8000.0 - 50.0) * i / 999.0;
    EXPECT_NEAR(HzToBark(f), static_cast<double>(oracle::BarkLong(f)), 1e-9) << f;
  }
}

TEST(BarkProperties, MonotoneRoundTripAndRange) {
  double previous = kBarkInfimum;
  for (double f = 50.0; f <= 20000.0; f *= 1.01) {
    const double z = HzToBark(f);
    EXPECT_GT(z, previous);
    EXPECT_GT(z, kBarkInfimum);
    EXPECT_LT(z, kBarkSupremum);
    EXPECT_LE(std::abs(BarkToHz(z) - f) / f, 1e-9);
    previous = z;
  }
}

}  // namespace
}  // namespace vtense
