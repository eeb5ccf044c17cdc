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

#include "vtense/formant_extract.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"
#include "vtense/error.h"

namespace vtense {
namespace {

std::vector<double> Hamming(std::vector<double> x) {
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] *= 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / (n - 1));
  }
  return x;
}

std::vector<double> PreEmphasize(const std::vector<double>& x, double k) {
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] - (i ? k * x[i - 1] : 0.0);
  return y;
}

double MedianOf(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

AudioBuffer Audio(std::vector<double> samples, int fs) {
  AudioBuffer a;
  a.samples = std::move(samples);
  a.sample_rate_hz = fs;
  return a;
}

TEST(LpcCoefficients, WhiteNoiseHasNoStructure) {
  double total = 0.0;
  constexpr int kFrames = 200;
  for (int s = 0; s < kFrames; ++s) {
    const auto frame = Hamming(oracle::WhiteNoise(400, 1000 + s));
    const auto model = LpcCoefficients(frame, 10);
    ASSERT_TRUE(model.has_value());
    EXPECT_GE(model->prediction_gain, 1.0);
    total += model->prediction_gain;
  }
  EXPECT_LT(total / kFrames, 1.15);
}

TEST(LpcCoefficients, SinusoidSpectralPeak) {
  std::vector<double> x(400);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(2.0 * std::numbers::pi * 500.0 * i / 10000.0 + 0.3);
  const auto model = LpcCoefficients(Hamming(x), 4);
  ASSERT_TRUE(model.has_value());
  EXPECT_EQ(model->order, 4);
  EXPECT_EQ(model->coefficients.size(), 4u);
  EXPECT_NEAR(oracle::LpcSpectrumPeakHz(model->coefficients, 10000.0, 20.0, 4980.0), 500.0, 10.0);
}

TEST(LpcCoefficients, SilenceAndPreconditions) {
  const std::vector<double> zeros(256, 0.0);
  EXPECT_FALSE(LpcCoefficients(zeros, 10).has_value());
  EXPECT_THROW(LpcCoefficients(zeros, 1), DomainError);
  EXPECT_THROW(LpcCoefficients(std::vector<double>(8, 1.0), 8), DomainError);
}

TEST(LpcModel, InverseFilterResponseMatchesDirectSum) {
  LpcModel m;
  m.coefficients = {1.2, -0.5, 0.1};
  m.order = 3;
  const double w = 2.0 * std::numbers::pi * 700.0 / 8000.0;
  double re = 1.0, im = 0.0;
  for (int k = 0; k < 3; ++k) {
    re -= m.coefficients[k] * std::cos(w * (k + 1));
    im += m.coefficients[k] * std::sin(w * (k + 1));
  }
  EXPECT_NEAR(m.InverseFilterPowerResponse(700.0, 8000.0), 1.0 / (re * re + im * im), 1e-12);
}

TEST(FormantsFromLpc, TwoResonances) {
  const auto signal = oracle::ResonatorVowel({{800.0, 80.0}, {1200.0, 90.0}}, 100.0, 10000, 200.0);
  std::vector<double> frame(signal.begin() + 1000, signal.begin() + 1250);
  const auto model = LpcCoefficients(Hamming(PreEmphasize(frame, 0.97)), 12);
  ASSERT_TRUE(model.has_value());
  const auto candidates = FormantsFromLpc(*model, 10000.0);
  ASSERT_GE(candidates.size(), 2u);
  auto nearest = [&](double target) {
    double best = 1e9;
    for (const auto& c : candidates) best = std::min(best, std::abs(c.frequency_hz - target));
    return best;
  };
  EXPECT_LE(nearest(800.0), 20.0);
  EXPECT_LE(nearest(1200.0), 20.0);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    EXPECT_LT(candidates[i - 1].frequency_hz, candidates[i].frequency_hz);
  }
}

TEST(FormantsFromLpc, FilterSemantics) {
  // Complex pair near 4500 Hz at fs 10 kHz, outside a 3000 Hz ceiling.
  const double r = 0.98;
  const double w = 2.0 * std::numbers::pi * 4500.0 / 10000.0;
  LpcModel high;
  high.order = 2;
  high.coefficients = {2.0 * r * std::cos(w), -r * r};
  EXPECT_TRUE(FormantsFromLpc(high, 10000.0, 3000.0).empty());
  EXPECT_EQ(FormantsFromLpc(high, 10000.0, 5500.0).size(), 1u);

  // Two real roots (0.9 and -0.5): nothing with a positive imaginary part.
  LpcModel real;
  real.order = 2;
  real.coefficients = {0.4, 0.45};
  EXPECT_TRUE(FormantsFromLpc(real, 10000.0).empty());
}

TEST(TrackFormants, ResonatorVowelF1) {
  const auto signal = oracle::ResonatorVowel({{300, 60}, {2300, 90}, {3000, 150}}, 120.0, 10000, 500.0);
  const FormantTrack track = TrackFormants(Audio(signal, 10000), ExtractionConfig{});
  EXPECT_EQ(track.frames.size(), 48u);
  std::vector<double> f1;
  for (const auto& f : track.frames) {
    if (f.f1_hz) f1.push_back(*f.f1_hz);
    if (f.f1_hz && f.f2_hz) EXPECT_LT(*f.f1_hz, *f.f2_hz);
    if (f.f2_hz && f.f3_hz) EXPECT_LT(*f.f2_hz, *f.f3_hz);
  }
  ASSERT_FALSE(f1.empty());
  EXPECT_NEAR(MedianOf(f1), 300.0, 30.0);
  EXPECT_NEAR(track.frames[0].time_ms, 12.5, 1e-9);
}

TEST(TrackFormants, SilenceGivesMissingFormants) {
  const FormantTrack track = TrackFormants(Audio(std::vector<double>(5000, 0.0), 10000), ExtractionConfig{});
  ASSERT_FALSE(track.frames.empty());
  for (const auto& f : track.frames) {
    EXPECT_FALSE(f.f1_hz || f.f2_hz || f.f3_hz);
  }
}

TEST(TrackFormants, Deterministic) {
  const auto signal = oracle::ResonatorVowel({{500, 60}, {1500, 90}, {2500, 150}}, 110.0, 16000, 300.0);
  EXPECT_EQ(TrackFormants(Audio(signal, 16000), {}), TrackFormants(Audio(signal, 16000), {}));
}

TEST(MakeFrameGrid, WindowingArithmetic) {
  const FrameGrid grid = MakeFrameGrid(Audio(std::vector<double>(5000, 0.1), 10000), ExtractionConfig{});
  EXPECT_EQ(grid.frame_length, 250);
  EXPECT_EQ(grid.hop, 100);
  EXPECT_EQ(grid.count, 48);
  EXPECT_THROW(MakeFrameGrid(Audio(std::vector<double>(100, 0.1), 10000), ExtractionConfig{}), ConfigError);
}

TEST(EstimateF0, Sawtooth120) {
  const auto pitch = EstimateF0(Audio(oracle::Sawtooth(120.0, 16000, 500.0), 16000), ExtractionConfig{});
  ASSERT_GT(pitch.size(), 4u);
  for (std::size_t i = 1; i + 1 < pitch.size(); ++i) {
    ASSERT_TRUE(pitch[i].f0_hz.has_value()) << i;
    EXPECT_NEAR(*pitch[i].f0_hz, 120.0, 2.0);
  }
}

TEST(EstimateF0, WhiteNoiseMostlyUnvoiced) {
  const auto pitch = EstimateF0(Audio(oracle::WhiteNoise(16000, 99), 16000), ExtractionConfig{});
  const auto unvoiced = std::count_if(pitch.begin(), pitch.end(), [](const PitchFrame& p) { return !p.f0_hz; });
  EXPECT_GE(static_cast<double>(unvoiced), 0.9 * static_cast<double>(pitch.size()));
}

TEST(ExtractionConfig, LagBandValidation) {
  ExtractionConfig c;
  c.f0_max_hz = 6000.0;
  EXPECT_THROW(c.Validate(10000), ConfigError);
  ExtractionConfig slow;
  slow.f0_min_hz = 20.0;
  EXPECT_THROW(slow.Validate(10000), ConfigError);
  ExtractionConfig inverted;
  inverted.hop_ms = 30.0;
  EXPECT_THROW(inverted.Validate(10000), ConfigError);
  EXPECT_EQ(ExtractionConfig{}.OrderFor(10000), 12);
  EXPECT_EQ(ExtractionConfig{}.OrderFor(16000), 18);
  EXPECT_NO_THROW(ExtractionConfig{}.Validate(16000));
}

TEST(ExtractTrack, MergesPitchIntoFormantFrames) {
  const auto signal = oracle::ResonatorVowel({{400, 60}, {1800, 90}, {2600, 150}}, 130.0, 16000, 400.0);
  const FormantTrack t = ExtractTrack(Audio(signal, 16000), ExtractionConfig{});
  int voiced = 0;
  for (const auto& f : t.frames) {
    if (f.f0_hz) {
      ++voiced;
      EXPECT_NEAR(*f.f0_hz, 130.0, 3.0);
    }
  }
  EXPECT_GT(voiced, static_cast<int>(t.frames.size()) / 2);
}

}  // namespace
}  // namespace vtense
