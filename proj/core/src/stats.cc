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

#include "vtense/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include <Eigen/Dense>

#include "vtense/error.h"

namespace vtense {

namespace {

constexpr double kLentzEpsilon = 1e-15;
constexpr double kLentzTiny = 1e-300;
constexpr int kLentzMaxIterations = 10000;

// Continued fraction for I_x(a, b) (modified Lentz).
double BetaContinuedFraction(double x, double a, double b) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kLentzTiny) d = kLentzTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kLentzMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kLentzTiny) d = kLentzTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kLentzTiny) c = kLentzTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kLentzTiny) d = kLentzTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kLentzTiny) c = kLentzTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kLentzEpsilon) return h;
  }
  throw DegenerateDataError("incomplete beta continued fraction did not converge");
}

void RequireFinite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError("statistics input contains a non-finite value");
  }
}

// Sum of squared residuals of the least-squares fit and the design rank.
struct LeastSquares {
  double rss;
  Eigen::Index rank;
};

LeastSquares FitRss(const Eigen::MatrixXd& design, const Eigen::VectorXd& y) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  Eigen::VectorXd beta = qr.solve(y);
  return {(y - design * beta).squaredNorm(), qr.rank()};
}

// Sum-to-zero (effect) coding for one factor.
void EffectColumns(const std::vector<int>& level_of, int levels, Eigen::MatrixXd& design, int first_col) {
  for (std::size_t r = 0; r < level_of.size(); ++r) {
    for (int j = 0; j < levels - 1; ++j) {
      const int lv = level_of[r];
      design(static_cast<Eigen::Index>(r), first_col + j) = lv == j ? 1.0 : (lv == levels - 1 ? -1.0 : 0.0);
    }
  }
}

TestResult FTest(double ss, double df, double rss, double df_res, double tolerance) {
  TestResult t;
  t.kind = "anova_f";
  t.df = df;
  t.df_denominator = df_res;
  if (ss <= tolerance) {
    t.statistic = 0.0;
    t.p_value = 1.0;
  } else if (rss <= tolerance) {
    t.statistic = std::numeric_limits<double>::infinity();
    t.p_value = 0.0;
  } else {
    t.statistic = (ss / df) / (rss / df_res);
    t.p_value = FSurvival(t.statistic, df, df_res);
  }
  return t;
}

}  // namespace

double Quantile(std::span<const double> sorted, double p, QuantileMethod method) {
  if (sorted.empty()) throw InsufficientDataError("quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile probability must lie in [0, 1]");
  const auto n = static_cast<double>(sorted.size());
  // Zero-based fractional position.
  double h = method == QuantileMethod::kType7 ? (n - 1.0) * p : (n + 1.0) * p - 1.0;
  h = std::clamp(h, 0.0, n - 1.0);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const double frac = h - static_cast<double>(lo);
  if (lo + 1 >= sorted.size() || frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double Mean(std::span<const double> values) {
  if (values.empty()) throw InsufficientDataError("mean of an empty sample");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double SampleVariance(std::span<const double> values) {
  if (values.size() < 2) throw InsufficientDataError("variance needs at least 2 values");
  const double m = Mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return ss / static_cast<double>(values.size() - 1);
}

double Median(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return Quantile(sorted, 0.5);
}

SixNumberSummary Summarize(std::span<const double> values, QuantileMethod method) {
  if (values.empty()) throw InsufficientDataError("cannot summarize an empty sample");
  RequireFinite(values);
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  SixNumberSummary s;
  s.count = static_cast<int>(sorted.size());
  s.min = sorted.front();
  s.max = sorted.back();
  s.q1 = Quantile(sorted, 0.25, method);
  s.median = Quantile(sorted, 0.5, method);
  s.q3 = Quantile(sorted, 0.75, method);
  // Summing the sorted copy keeps the result independent of input order.
  s.mean = std::clamp(Mean(sorted), s.min, s.max);
  return s;
}

double RegularizedIncompleteBeta(double x, double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw DomainError("incomplete beta needs a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("incomplete beta needs x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * BetaContinuedFraction(x, a, b) / a;
  return 1.0 - front * BetaContinuedFraction(1.0 - x, b, a) / b;
}

double StudentTTwoSidedP(double t, double df) {
  if (!(df > 0.0)) throw DomainError("t distribution needs df > 0");
  if (std::isnan(t)) throw DomainError("t statistic is NaN");
  if (std::isinf(t)) return 0.0;
  return RegularizedIncompleteBeta(df / (df + t * t), df / 2.0, 0.5);
}

double StudentTCdf(double t, double df) {
  const double tail = 0.5 * StudentTTwoSidedP(t, df);
  return t < 0.0 ? tail : 1.0 - tail;
}

double FSurvival(double f, double d1, double d2) {
  if (!(d1 > 0.0 && d2 > 0.0)) throw DomainError("F distribution needs positive degrees of freedom");
  if (std::isnan(f)) throw DomainError("F statistic is NaN");
  if (f <= 0.0) return 1.0;
  if (std::isinf(f)) return 0.0;
  return RegularizedIncompleteBeta(d2 / (d2 + d1 * f), d2 / 2.0, d1 / 2.0);
}

TestResult WelchT(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw InsufficientDataError("Welch t-test needs at least 2 values per group");
  RequireFinite(a);
  RequireFinite(b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double va = SampleVariance(a) / na;
  const double vb = SampleVariance(b) / nb;
  if (va == 0.0 && vb == 0.0) throw DegenerateDataError("Welch t-test: both groups have zero variance");
  TestResult r;
  r.kind = "welch_t";
  r.statistic = (Mean(a) - Mean(b)) / std::sqrt(va + vb);
  r.df = (va + vb) * (va + vb) / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  r.p_value = StudentTTwoSidedP(r.statistic, r.df);
  return r;
}

AnovaTable Anova2(const std::vector<AnovaObservation>& records, bool interaction) {
  std::map<std::string, int> levels_a;
  std::map<std::string, int> levels_b;
  for (const auto& r : records) {
    if (!std::isfinite(r.value)) throw DomainError("ANOVA input contains a non-finite value");
    levels_a.emplace(r.factor_a, 0);
    levels_b.emplace(r.factor_b, 0);
  }
  if (levels_a.size() < 2 || levels_b.size() < 2) {
    throw InsufficientDataError("two-way ANOVA needs at least 2 levels per factor");
  }
  AnovaTable table;
  int idx = 0;
  for (auto& [name, i] : levels_a) {
    i = idx++;
    table.levels_a.push_back(name);
  }
  idx = 0;
  for (auto& [name, i] : levels_b) {
    i = idx++;
    table.levels_b.push_back(name);
  }
  const int la = static_cast<int>(levels_a.size());
  const int lb = static_cast<int>(levels_b.size());
  const auto n = static_cast<Eigen::Index>(records.size());

  std::vector<int> level_a(records.size());
  std::vector<int> level_b(records.size());
  std::vector<int> cell_count(static_cast<std::size_t>(la * lb), 0);
  Eigen::VectorXd y(n);
  for (std::size_t r = 0; r < records.size(); ++r) {
    level_a[r] = levels_a[records[r].factor_a];
    level_b[r] = levels_b[records[r].factor_b];
    ++cell_count[static_cast<std::size_t>(level_a[r] * lb + level_b[r])];
    y(static_cast<Eigen::Index>(r)) = records[r].value;
  }
  if (interaction && std::count(cell_count.begin(), cell_count.end(), 0) > 0) {
    throw ConfigError("ANOVA interaction requested but some factor cells are empty; use main-effects-only mode");
  }

  const int cols_a = la - 1;
  const int cols_b = lb - 1;
  Eigen::MatrixXd full(n, 1 + cols_a + cols_b + cols_a * cols_b);
  full.setZero();
  full.col(0).setOnes();
  EffectColumns(level_a, la, full, 1);
  EffectColumns(level_b, lb, full, 1 + cols_a);
  for (int i = 0; i < cols_a; ++i) {
    for (int j = 0; j < cols_b; ++j) {
      full.col(1 + cols_a + cols_b + i * cols_b + j) =
          full.col(1 + i).cwiseProduct(full.col(1 + cols_a + j));
    }
  }
  Eigen::MatrixXd only_b(n, 1 + cols_b);
  only_b << full.col(0), full.middleCols(1 + cols_a, cols_b);
  const Eigen::MatrixXd only_a = full.leftCols(1 + cols_a);
  const Eigen::MatrixXd additive = full.leftCols(1 + cols_a + cols_b);

  const LeastSquares fit_b = FitRss(only_b, y);
  const LeastSquares fit_a = FitRss(only_a, y);
  const LeastSquares fit_ab = FitRss(additive, y);
  const LeastSquares fit_full = interaction ? FitRss(full, y) : fit_ab;

  table.residual_sum_squares = fit_full.rss;
  table.residual_df = static_cast<double>(n - fit_full.rank);
  if (table.residual_df <= 0.0) throw DegenerateDataError("ANOVA has no residual degrees of freedom");

  const double total_ss = (y.array() - y.mean()).square().sum();
  const double tolerance = 1e-12 * std::max(total_ss, std::numeric_limits<double>::min());
  const double rss = table.residual_sum_squares;
  const double df_res = table.residual_df;

  table.a.name = "A";
  table.a.sum_squares = std::max(0.0, fit_b.rss - fit_ab.rss);
  table.a.test = FTest(table.a.sum_squares, static_cast<double>(fit_ab.rank - fit_b.rank), rss, df_res, tolerance);
  table.b.name = "B";
  table.b.sum_squares = std::max(0.0, fit_a.rss - fit_ab.rss);
  table.b.test = FTest(table.b.sum_squares, static_cast<double>(fit_ab.rank - fit_a.rank), rss, df_res, tolerance);
  if (interaction) {
    AnovaEffect ab;
    ab.name = "A:B";
    ab.sum_squares = std::max(0.0, fit_ab.rss - fit_full.rss);
    const double df_ab = static_cast<double>(fit_full.rank - fit_ab.rank);
    if (df_ab > 0.0) {
      ab.test = FTest(ab.sum_squares, df_ab, rss, df_res, tolerance);
    } else {
      ab.test = TestResult{0.0, 0.0, df_res, 1.0, "anova_f"};
    }
    table.interaction = ab;
  }
  return table;
}

PearsonResult Pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InsufficientDataError("Pearson correlation needs equal-length samples");
  if (x.size() < 3) throw InsufficientDataError("Pearson correlation needs at least 3 pairs");
  RequireFinite(x);
  RequireFinite(y);
  const double mx = Mean(x);
  const double my = Mean(y);
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw DegenerateDataError("Pearson correlation: zero variance");
  PearsonResult out;
  out.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  out.test.kind = "pearson_t";
  out.test.df = static_cast<double>(x.size() - 2);
  const double denom = 1.0 - out.r * out.r;
  if (denom <= 0.0) {
    out.test.statistic = std::copysign(std::numeric_limits<double>::infinity(), out.r);
    out.test.p_value = 0.0;
  } else {
    out.test.statistic = out.r * std::sqrt(out.test.df / denom);
    out.test.p_value = StudentTTwoSidedP(out.test.statistic, out.test.df);
  }
  return out;
}

}  // namespace vtense
