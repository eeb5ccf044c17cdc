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

// Descriptive summaries and the inferential tests used on corpus records:
// Welch's t-test, fixed-effects two-way ANOVA with Type II sums of squares,
// and Pearson correlation. Tail probabilities come from the regularized
// incomplete beta function evaluated by a modified Lentz continued fraction.

#ifndef VTENSE_STATS_H_
#define VTENSE_STATS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vtense {

// Hyndman-Fan sample quantile definitions.
enum class QuantileMethod { kType6, kType7 };

struct SixNumberSummary {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double mean = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  int count = 0;
};

// Throws InsufficientDataError when empty, DomainError on non-finite input.
SixNumberSummary Summarize(std::span<const double> values,
                           QuantileMethod method = QuantileMethod::kType7);

// p in [0, 1] over already sorted values.
double Quantile(std::span<const double> sorted, double p,
                QuantileMethod method = QuantileMethod::kType7);

double Median(std::span<const double> values);
double Mean(std::span<const double> values);
double SampleVariance(std::span<const double> values);

// I_x(a, b). Throws DomainError for x outside [0, 1] or non-positive a, b.
double RegularizedIncompleteBeta(double x, double a, double b);

double StudentTCdf(double t, double df);
// P(|T| >= |t|).
double StudentTTwoSidedP(double t, double df);
// P(F >= f) for F(d1, d2).
double FSurvival(double f, double d1, double d2);

struct TestResult {
  double statistic = 0.0;
  double df = 0.0;
  std::optional<double> df_denominator;  // F tests only
  double p_value = 1.0;
  std::string kind;
};

// Two-sided Welch t-test of mean(a) - mean(b). Throws InsufficientDataError
// for groups smaller than 2, DegenerateDataError when both variances are 0.
TestResult WelchT(std::span<const double> a, std::span<const double> b);

struct AnovaObservation {
  std::string factor_a;
  std::string factor_b;
  double value = 0.0;
};

struct AnovaEffect {
  std::string name;
  double sum_squares = 0.0;
  TestResult test;
};

struct AnovaTable {
  AnovaEffect a;
  AnovaEffect b;
  std::optional<AnovaEffect> interaction;
  double residual_sum_squares = 0.0;
  double residual_df = 0.0;
  std::vector<std::string> levels_a;
  std::vector<std::string> levels_b;
};

// Fixed-effects two-way ANOVA, Type II sums of squares. With `interaction`
// every (a, b) cell must hold at least one observation; otherwise ConfigError
// suggests the main-effects-only mode.
AnovaTable Anova2(const std::vector<AnovaObservation>& records, bool interaction = true);

struct PearsonResult {
  double r = 0.0;
  TestResult test;  // t = r sqrt((n-2)/(1-r^2)), df = n - 2
};

// Throws InsufficientDataError for n < 3 or unequal lengths,
// DegenerateDataError for zero variance.
PearsonResult Pearson(std::span<const double> x, std::span<const double> y);

}  // namespace vtense

#endif  // VTENSE_STATS_H_
