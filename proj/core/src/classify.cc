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

#include "vtense/error.h"
#include "vtense/stats.h"
#include "vtense/tenseness.h"

namespace vtense {

const char* ClassName(TensenessClass c) {
  switch (c) {
    case TensenessClass::kTense: return "Tense";
    case TensenessClass::kStable: return "Stable";
    case TensenessClass::kLax: return "Lax";
  }
  return "?";
}

TensenessClass ClassifyTheta(double theta1_rad, double epsilon_rad) {
  if (!std::isfinite(theta1_rad)) throw DomainError("theta must be finite");
  if (!(epsilon_rad >= 0.0)) throw DomainError("epsilon must be non-negative");
  if (theta1_rad < -epsilon_rad) return TensenessClass::kTense;
  if (theta1_rad > epsilon_rad) return TensenessClass::kLax;
  return TensenessClass::kStable;
}

void PairPolicy::Validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (!(min_gap_rad >= 0.0)) throw ConfigError("min_gap must be non-negative");
  if (!(epsilon_rad >= 0.0)) throw ConfigError("epsilon must be non-negative");
}

PairVerdict ClassifyPair(std::span<const double> thetas_a, std::span<const double> thetas_b,
                         const PairPolicy& policy) {
  policy.Validate();
  if (thetas_a.size() < 2 || thetas_b.size() < 2) {
    throw InsufficientDataError("pair classification needs at least 2 values per vowel");
  }
  PairVerdict v;
  v.evidence.median_a = Median(thetas_a);
  v.evidence.median_b = Median(thetas_b);
  v.evidence.median_gap = std::abs(v.evidence.median_a - v.evidence.median_b);
  try {
    TestResult t = WelchT(thetas_a, thetas_b);
    v.evidence.welch_t = t.statistic;
    v.evidence.welch_p = t.p_value;
  } catch (const DegenerateDataError&) {
    // Two point masses: separated for sure unless they coincide.
    const double diff = Mean(thetas_a) - Mean(thetas_b);
    v.evidence.welch_t = diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff);
    v.evidence.welch_p = diff == 0.0 ? 1.0 : 0.0;
  }
  v.bifurcated = v.evidence.welch_p < policy.alpha && v.evidence.median_gap >= policy.min_gap_rad &&
                 v.evidence.median_gap > 0.0;
  if (v.bifurcated) {
    const bool a_lower = v.evidence.median_a < v.evidence.median_b;
    v.label_a = a_lower ? TensenessClass::kTense : TensenessClass::kLax;
    v.label_b = a_lower ? TensenessClass::kLax : TensenessClass::kTense;
  } else {
    v.label_a = ClassifyTheta(v.evidence.median_a, policy.epsilon_rad);
    v.label_b = ClassifyTheta(v.evidence.median_b, policy.epsilon_rad);
  }
  return v;
}

const char* RelativeName(RelativeTenseness r) {
  switch (r) {
    case RelativeTenseness::kAMoreTense: return "A more tense";
    case RelativeTenseness::kBMoreTense: return "B more tense";
    case RelativeTenseness::kEqual: return "equal";
  }
  return "?";
}

RelativeTenseness RelativeByDeviation(double f1_a_hz, double f1_b_hz, double f_neu_hz) {
  for (double f : {f1_a_hz, f1_b_hz, f_neu_hz}) {
    if (!(std::isfinite(f) && f > 0.0)) throw DomainError("frequencies must be positive and finite");
  }
  const double da = DeviationIndex(f1_a_hz, f_neu_hz);
  const double db = DeviationIndex(f1_b_hz, f_neu_hz);
  if (da > db) return RelativeTenseness::kAMoreTense;
  if (db > da) return RelativeTenseness::kBMoreTense;
  return RelativeTenseness::kEqual;
}

}  // namespace vtense
