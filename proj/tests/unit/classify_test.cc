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

#include "vtense/classify.h"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "vtense/error.h"

namespace vtense {
namespace {

std::vector<double> Around(double median, double spread, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, spread);
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(median + noise(rng));
  return v;
}

TEST(ClassifyTheta, Examples) {
  EXPECT_EQ(ClassifyTheta(-0.3, 0.01), TensenessClass::kTense);
  EXPECT_EQ(ClassifyTheta(0.0), TensenessClass::kStable);
  EXPECT_EQ(ClassifyTheta(0.005, 0.01), TensenessClass::kStable);
  EXPECT_EQ(ClassifyTheta(0.2), TensenessClass::kLax);
  EXPECT_THROW(ClassifyTheta(std::nan("")), DomainError);
  EXPECT_THROW(ClassifyTheta(0.1, -0.01), DomainError);
}

TEST(ClassifyTheta, MonotoneInTheta) {
  int previous = 0;
  for (double t = -1.5; t <= 1.5; t += 0.001) {
    const int rank = static_cast<int>(ClassifyTheta(t, 0.05));
    EXPECT_GE(rank, previous);
    previous = rank;
  }
}

TEST(ClassifyPair, ReportedMedianPairsBifurcate) {
  const std::pair<double, double> pairs[] = {{-0.2810, 0.5170}, {-0.69243, 0.4031}, {-0.18350, 0.2810}};
  std::uint64_t seed = 11;
  for (const auto& [a, b] : pairs) {
    const PairVerdict v = ClassifyPair(Around(a, 0.05, 30, seed), Around(b, 0.05, 30, seed + 1));
    seed += 2;
    EXPECT_TRUE(v.bifurcated);
    EXPECT_EQ(v.label_a, TensenessClass::kTense);
    EXPECT_EQ(v.label_b, TensenessClass::kLax);
    EXPECT_LT(v.evidence.welch_p, 0.05);
  }
}

TEST(ClassifyPair, IdenticalDistributions) {
  const std::vector<double> a = {-0.2, -0.1, -0.15, -0.12};
  const PairVerdict v = ClassifyPair(a, a);
  EXPECT_FALSE(v.bifurcated);
  EXPECT_EQ(v.label_a, TensenessClass::kTense);
  EXPECT_EQ(v.label_b, TensenessClass::kTense);
  EXPECT_EQ(v.evidence.median_gap, 0.0);
}

TEST(ClassifyPair, SameSignGroupsStillSplit) {
  // Both positive, well separated: the lower-median group is the tense one.
  const PairVerdict v = ClassifyPair(Around(0.05, 0.02, 20, 3), Around(0.4, 0.02, 20, 4));
  EXPECT_TRUE(v.bifurcated);
  EXPECT_EQ(v.label_a, TensenessClass::kTense);
  EXPECT_EQ(v.label_b, TensenessClass::kLax);
}

TEST(ClassifyPair, SymmetryAndTranslation) {
  const auto a = Around(-0.3, 0.1, 15, 5);
  const auto b = Around(0.2, 0.1, 17, 6);
  const PairVerdict ab = ClassifyPair(a, b);
  const PairVerdict ba = ClassifyPair(b, a);
  EXPECT_EQ(ab.bifurcated, ba.bifurcated);
  EXPECT_EQ(ab.label_a, ba.label_b);
  EXPECT_EQ(ab.label_b, ba.label_a);
  auto shift = [](std::vector<double> v, double c) {
    for (double& x : v) x += c;
    return v;
  };
  const PairVerdict shifted = ClassifyPair(shift(a, 0.25), shift(b, 0.25));
  EXPECT_EQ(shifted.bifurcated, ab.bifurcated);
  EXPECT_EQ(shifted.label_a, ab.label_a);
  EXPECT_NEAR(shifted.evidence.welch_t, ab.evidence.welch_t, 1e-9);
}

TEST(ClassifyPair, GapPolicy) {
  PairPolicy strict;
  strict.min_gap_rad = 0.5;
  const PairVerdict v = ClassifyPair(Around(-0.1, 0.01, 20, 7), Around(0.1, 0.01, 20, 8), strict);
  EXPECT_FALSE(v.bifurcated);
  EXPECT_EQ(v.label_a, TensenessClass::kTense);
  EXPECT_EQ(v.label_b, TensenessClass::kLax);
}

TEST(ClassifyPair, InsufficientData) {
  EXPECT_THROW(ClassifyPair(std::vector<double>{0.1}, std::vector<double>{0.2, 0.3}), InsufficientDataError);
  PairPolicy bad;
  bad.alpha = 1.5;
  EXPECT_THROW(bad.Validate(), ConfigError);
}

TEST(RelativeByDeviation, Examples) {
  EXPECT_EQ(RelativeByDeviation(300, 450, 500), RelativeTenseness::kAMoreTense);
  EXPECT_EQ(RelativeByDeviation(500, 500, 500), RelativeTenseness::kEqual);
  EXPECT_EQ(RelativeByDeviation(700, 350, 500), RelativeTenseness::kAMoreTense);
  EXPECT_EQ(RelativeByDeviation(480, 350, 500), RelativeTenseness::kBMoreTense);
  EXPECT_THROW(RelativeByDeviation(0, 350, 500), DomainError);
}

TEST(RelativeByDeviation, ReflectionInvariance) {
  for (double a : {320.0, 410.0, 560.0}) {
    for (double b : {300.0, 470.0, 690.0}) {
      EXPECT_EQ(RelativeByDeviation(a, b, 500), RelativeByDeviation(1000 - a, 1000 - b, 500));
    }
  }
}

}  // namespace
}  // namespace vtense
