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

#include "vtense/tenseness.h"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.h"
#include "vtense/error.h"
#include "vtense/scales.h"

namespace vtense {
namespace {

FormantTrack TwoPointF1(double t0, double f0, double t1, double f1) {
  return oracle::PiecewiseF1Track({t0, t1}, {f0, f1});
}

// F1 given as a Bark-linear ramp so that landmark Barks are known exactly.
FormantTrack BarkRamp(double z_at_0, double z_per_ds, double end_ms) {
  return oracle::PolynomialTrack({z_at_0, z_per_ds}, 0.0, end_ms, 1.0);
}

TEST(Landmarks, Arithmetic) {
  const Landmarks a = ComputeLandmarks(0.0, 300.0);
  EXPECT_NEAR(a.t33_ms, 99.0, 1e-12);
  EXPECT_NEAR(a.t66_ms, 198.0, 1e-12);
  EXPECT_NEAR(a.d_ds, 0.99, 1e-12);
  const Landmarks b = ComputeLandmarks(100.0, 200.0);
  EXPECT_NEAR(b.t33_ms, 133.0, 1e-12);
  EXPECT_NEAR(b.t66_ms, 166.0, 1e-12);
  EXPECT_NEAR(b.d_ds, 0.33, 1e-12);
  EXPECT_THROW(ComputeLandmarks(100.0, 100.0), DomainError);
  EXPECT_THROW(ComputeLandmarks(200.0, 100.0), DomainError);
}

TEST(SampleAt, InterpolationRules) {
  FormantTrack t = TwoPointF1(0.0, 500.0, 10.0, 520.0);
  EXPECT_DOUBLE_EQ(*SampleAt(t, 5.0, Channel::kF1), 510.0);
  EXPECT_DOUBLE_EQ(*SampleAt(t, 10.0, Channel::kF1), 520.0);
  EXPECT_DOUBLE_EQ(*SampleAt(t, 0.0, Channel::kF1), 500.0);
  t.frames[1].f0_hz = 120.0;
  EXPECT_FALSE(SampleAt(t, 5.0, Channel::kF0).has_value());
  EXPECT_THROW(SampleAt(t, 10.5, Channel::kF1), DomainError);
  EXPECT_THROW(SampleAt(t, -1.0, Channel::kF1), DomainError);
}

TEST(ThetaN, ClosedFormBarkRamp) {
  // One Bark per decisecond: the landmark difference over d is exactly 1.
  const FormantTrack t = BarkRamp(5.0, 1.0, 400.0);
  const VowelSegment seg = VowelSegment::FromInterval(0.0, 400.0);
  EXPECT_NEAR(ThetaN(t, seg, 1), std::numbers::pi / 4, 1e-9);
}

TEST(ThetaN, FlatIsZeroAndFallingIsNegative) {
  const VowelSegment seg = VowelSegment::FromInterval(0.0, 300.0);
  EXPECT_EQ(ThetaN(TwoPointF1(0.0, 500.0, 300.0, 500.0), seg, 1), 0.0);
  // 600 -> 480 Hz between the landmarks (99 ms and 198 ms).
  const FormantTrack falling = oracle::PiecewiseF1Track({0.0, 99.0, 198.0, 300.0}, {600.0, 600.0, 480.0, 480.0});
  const double theta = ThetaN(falling, seg, 1);
  EXPECT_LT(theta, 0.0);
  const double expected = std::atan((HzToBark(480.0) - HzToBark(600.0)) / 0.99);
  EXPECT_NEAR(theta, expected, 1e-12);
}

TEST(ThetaN, MissingFormantAtLandmark) {
  FormantTrack t = TwoPointF1(0.0, 500.0, 300.0, 520.0);
  const VowelSegment seg = VowelSegment::FromInterval(0.0, 300.0);
  EXPECT_THROW(ThetaN(t, seg, 2), IndicatorError);
  EXPECT_THROW(ThetaN(t, seg, 4), DomainError);
}

TEST(ThetaF1Hz, Examples) {
  // 1 Hz over d = 1 ds.
  const VowelSegment seg = VowelSegment::FromInterval(0.0, 100.0 / 0.33);
  const FormantTrack one_hz = oracle::PiecewiseF1Track({0.0, seg.landmarks.t33_ms, seg.landmarks.t66_ms, seg.offset_ms},
                                                       {500.0, 500.0, 501.0, 501.0});
  EXPECT_NEAR(seg.landmarks.d_ds, 1.0, 1e-12);
  EXPECT_NEAR(ThetaF1Hz(one_hz, seg), std::numbers::pi / 4, 1e-9);
  const FormantTrack rising = oracle::PiecewiseF1Track({0.0, seg.landmarks.t33_ms, seg.landmarks.t66_ms, seg.offset_ms},
                                                       {500.0, 500.0, 600.0, 600.0});
  EXPECT_NEAR(ThetaF1Hz(rising, seg), 1.5607966601082315, 1e-9);
  EXPECT_EQ(ThetaF1Hz(TwoPointF1(0.0, 400.0, 400.0, 400.0), VowelSegment::FromInterval(0.0, 400.0)), 0.0);
}

TEST(FitPoly, RecoversCubic) {
  // Z(t) = 2t^3 - t^2 + 0.5t + 8 sampled at 9 points.
  const FormantTrack t = oracle::PolynomialTrack({8.0, 0.5, -1.0, 2.0}, 100.0, 180.0, 10.0);
  ASSERT_EQ(t.frames.size(), 9u);
  const PolyModel m = FitPoly(t, {100.0, 180.0}, 3);
  ASSERT_EQ(m.coefficients.size(), 4u);
  EXPECT_NEAR(m.coefficients[0], 8.0, 1e-8);
  EXPECT_NEAR(m.coefficients[1], 0.5, 1e-8);
  EXPECT_NEAR(m.coefficients[2], -1.0, 1e-8);
  EXPECT_NEAR(m.coefficients[3], 2.0, 1e-8);
  EXPECT_EQ(m.sample_count, 9);
  EXPECT_LT(m.residual_rms, 1e-9);
}

TEST(FitPoly, Preconditions) {
  const FormantTrack three = oracle::PolynomialTrack({8.0, 0.5}, 0.0, 20.0, 10.0);
  EXPECT_THROW(FitPoly(three, {0.0, 20.0}, 3), FitError);
  const FormantTrack t = oracle::PolynomialTrack({8.0, 0.5}, 0.0, 100.0, 10.0);
  EXPECT_THROW(FitPoly(t, {0.0, 100.0}, 0), DomainError);
  EXPECT_THROW(FitPoly(t, {0.0, 100.0}, 7), DomainError);
  EXPECT_THROW(FitPoly(t, {50.0, 50.0}, 2), DomainError);
}

TEST(FitPoly, LinearDataNestedModel) {
  const FormantTrack t = oracle::PolynomialTrack({6.0, -0.7}, 0.0, 200.0, 5.0);
  const PolyModel m = FitPoly(t, {0.0, 200.0}, 3);
  EXPECT_NEAR(m.coefficients[2], 0.0, 1e-8);
  EXPECT_NEAR(m.coefficients[3], 0.0, 1e-8);
}

TEST(FitPoly, TimeShiftInvariance) {
  const FormantTrack a = oracle::PolynomialTrack({7.0, 0.3, -0.4, 0.2}, 0.0, 250.0, 5.0);
  FormantTrack b = a;
  for (auto& f : b.frames) f.time_ms += 1234.5;
  const PolyModel ma = FitPoly(a, {0.0, 250.0}, 3);
  const PolyModel mb = FitPoly(b, {1234.5, 1484.5}, 3);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(ma.coefficients[i], mb.coefficients[i], 1e-8);
  const VowelSegment sa = VowelSegment::FromInterval(0.0, 250.0);
  const VowelSegment sb = VowelSegment::FromInterval(1234.5, 1484.5);
  EXPECT_NEAR(ThetaN(a, sa, 1), ThetaN(b, sb, 1), 1e-9);
}

PolyModel Model(std::vector<double> c, double length_ds = 4.0) {
  PolyModel m;
  m.degree = static_cast<int>(c.size()) - 1;
  m.coefficients = std::move(c);
  m.window = {0.0, length_ds * 100.0};
  return m;
}

TEST(ZDerivative, Examples) {
  EXPECT_DOUBLE_EQ(ZDerivative(Model({0.0, 0.1}), 1.7), 0.1);
  EXPECT_DOUBLE_EQ(ZDerivative(Model({0.0, 0.0, 0.0, 1.0}), 2.0), 12.0);
  EXPECT_THROW(ZDerivative(Model({0.0, 1.0}), 4.5), DomainError);
  EXPECT_THROW(ZDerivative(Model({0.0, 1.0}), -0.1), DomainError);
}

TEST(ZDerivative, MatchesCentralDifferenceOnFittedModel) {
  const FormantTrack t = oracle::PolynomialTrack({9.0, -0.6, 0.45, -0.12}, 0.0, 300.0, 2.0);
  const PolyModel m = FitPoly(t, {0.0, 300.0}, 3);
  const double mid = 1.5;
  const double h = 1e-4;
  const double fd1 = (m.Evaluate(mid + h) - m.Evaluate(mid - h)) / (2 * h);
  const double fd2 = (m.Evaluate(mid + h) - 2 * m.Evaluate(mid) + m.Evaluate(mid - h)) / (h * h);
  EXPECT_NEAR(ZDerivative(m, mid), fd1, 1e-6 * std::abs(fd1));
  EXPECT_NEAR(ATense(m, mid).value, fd2, 1e-4 * std::abs(fd2));
}

TEST(InstantaneousTheta, Examples) {
  EXPECT_NEAR(InstantaneousTheta(Model({3.0, 0.1}), 1.0), 0.09966865249116204, 1e-12);
  EXPECT_EQ(InstantaneousTheta(Model({3.0}), 1.0), 0.0);
  const PolyModel smooth = Model({8.0, -0.5, 0.3, -0.05});
  for (double t : {0.5, 1.0, 2.0, 3.0}) {
    const double coarse = std::abs(FiniteStepTheta(smooth, t, 1e-3) - InstantaneousTheta(smooth, t));
    const double fine = std::abs(FiniteStepTheta(smooth, t, 1e-4) - InstantaneousTheta(smooth, t));
    EXPECT_LT(coarse, 1e-3);
    EXPECT_LT(fine, coarse / 5.0);
    EXPECT_NEAR(FiniteStepTheta(smooth, t, 1e-7), InstantaneousTheta(smooth, t), 1e-6);
  }
  EXPECT_THROW(FiniteStepTheta(smooth, 3.9995, 1e-3), DomainError);
}

TEST(ATense, Examples) {
  EXPECT_DOUBLE_EQ(ATense(Model({0.0, 0.0, 2.0, 1.0}), 0.0).value, 4.0);
  EXPECT_DOUBLE_EQ(ATense(Model({0.0, 0.0, 0.0, 1.0}), 1.0).value, 6.0);
  for (double t : {0.0, 1.3, 4.0}) EXPECT_DOUBLE_EQ(ATense(Model({1.0, 2.0, 3.0}), t).value, 6.0);
  const Acceleration linear = ATense(Model({1.0, 2.0}), 1.0);
  EXPECT_EQ(linear.value, 0.0);
  EXPECT_TRUE(linear.degenerate_degree);
}

TEST(ATense, CubicIdentityAcrossWindow) {
  const PolyModel m = Model({7.3, -1.1, 0.37, -0.219}, 3.0);
  for (int i = 0; i <= 300; ++i) {
    const double t = 0.01 * i;
    EXPECT_NEAR(ATense(m, t).value, 6 * m.coefficients[3] * t + 2 * m.coefficients[2], 1e-9);
  }
}

TEST(DeviationIndex, Examples) {
  EXPECT_DOUBLE_EQ(DeviationIndex(300.0, 500.0), 200.0);
  EXPECT_DOUBLE_EQ(DeviationIndex(500.0, 500.0), 0.0);
  EXPECT_GT(DeviationIndex(300.0, 500.0), DeviationIndex(450.0, 500.0));
}

TEST(ComputeIndicators, FallingTenseFixture) {
  FormantTrack t = oracle::PolynomialTrack({6.0, -0.4, 0.05}, 0.0, 280.0, 5.0);
  for (auto& f : t.frames) f.f0_hz = 130.0 - 0.05 * f.time_ms;
  const VowelSegment seg = VowelSegment::FromInterval(20.0, 260.0, {"i:", "tense", "en", "s1"});
  const TensenessRecord r = ComputeIndicators(t, seg);
  EXPECT_LT(r.theta1_rad, 0.0);
  EXPECT_LT(r.theta_f1_rad, 0.0);
  EXPECT_NEAR(r.z1_33_bark, HzToBark(r.f1_33_hz), 1e-12);
  ASSERT_TRUE(r.delta_f0_hz.has_value());
  EXPECT_NEAR(*r.delta_f0_hz, *r.f0_66_hz - *r.f0_33_hz, 1e-12);
  EXPECT_NEAR(*r.delta_f0_hz, -0.05 * (seg.landmarks.t66_ms - seg.landmarks.t33_ms), 1e-9);
  EXPECT_EQ(r.labels.class_label, "tense");
  EXPECT_DOUBLE_EQ(r.d_ds, seg.landmarks.d_ds);
}

TEST(ComputeIndicators, NoPitchAndFlatTrack) {
  const FormantTrack flat = TwoPointF1(0.0, 450.0, 300.0, 450.0);
  const TensenessRecord r = ComputeIndicators(flat, VowelSegment::FromInterval(0.0, 300.0));
  EXPECT_FALSE(r.delta_f0_hz.has_value());
  EXPECT_FALSE(r.f0_33_hz.has_value());
  EXPECT_EQ(r.theta1_rad, 0.0);
  EXPECT_EQ(r.theta_f1_rad, 0.0);
}

TEST(ComputeIndicators, SignAgreementAndRange) {
  for (double slope : {-3.0, -0.7, -0.01, 0.01, 0.4, 5.0}) {
    const FormantTrack t = oracle::PolynomialTrack({8.0, slope}, 0.0, 300.0, 10.0);
    const TensenessRecord r = ComputeIndicators(t, VowelSegment::FromInterval(0.0, 300.0));
    EXPECT_EQ(std::signbit(r.theta1_rad), std::signbit(r.theta_f1_rad)) << slope;
    EXPECT_EQ(r.theta1_rad < 0, slope < 0);
    EXPECT_LT(std::abs(r.theta1_rad), std::numbers::pi / 2);
  }
}

}  // namespace
}  // namespace vtense
