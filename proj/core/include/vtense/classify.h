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

// Tense/stable/lax labels for close vowels from the formant angle, relative
// pair classification, and ordering by distance from the neutral F1.

#ifndef VTENSE_CLASSIFY_H_
#define VTENSE_CLASSIFY_H_

#include <span>
#include <string>

namespace vtense {

enum class TensenessClass { kTense, kStable, kLax };

const char* ClassName(TensenessClass c);

// theta < -epsilon: tense (constriction); |theta| <= epsilon: stable;
// theta > epsilon: lax (expansion). Throws DomainError for non-finite theta or
// negative epsilon.
TensenessClass ClassifyTheta(double theta1_rad, double epsilon_rad = 0.0);

struct PairPolicy {
  double alpha = 0.05;
  double min_gap_rad = 0.1;
  double epsilon_rad = 0.0;

  void Validate() const;
};

struct PairEvidence {
  double median_a = 0.0;
  double median_b = 0.0;
  double welch_t = 0.0;
  double welch_p = 1.0;
  double median_gap = 0.0;  // |median_a - median_b|
};

struct PairVerdict {
  TensenessClass label_a = TensenessClass::kStable;
  TensenessClass label_b = TensenessClass::kStable;
  bool bifurcated = false;
  PairEvidence evidence;
};

// Bifurcated iff Welch p < alpha and the median gap is at least min_gap. A
// bifurcated pair puts the lower-median group at Tense and the other at Lax,
// whatever the signs; otherwise each group is labeled from its own median by
// ClassifyTheta. Throws InsufficientDataError when a group has < 2 values.
PairVerdict ClassifyPair(std::span<const double> thetas_a, std::span<const double> thetas_b,
                         const PairPolicy& policy = {});

enum class RelativeTenseness { kAMoreTense, kBMoreTense, kEqual };

const char* RelativeName(RelativeTenseness r);

// The vowel farther from f_neu is relatively more tense. Throws DomainError
// unless all inputs are positive.
RelativeTenseness RelativeByDeviation(double f1_a_hz, double f1_b_hz, double f_neu_hz);

}  // namespace vtense

#endif  // VTENSE_CLASSIFY_H_
