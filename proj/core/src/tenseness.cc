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

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "vtense/error.h"
#include "vtense/scales.h"
#include "vtense/text_io.h"

namespace vtense {

namespace {

constexpr double kLowerFraction = 0.33;
constexpr double kUpperFraction = 0.66;
// Relative slack when checking that t lies in a fit window.
constexpr double kWindowSlack = 1e-9;

double RequireFormant(const FormantTrack& track, double t_ms, Channel channel, const char* landmark) {
  std::optional<double> v = SampleAt(track, t_ms, channel);
  if (!v) {
    throw IndicatorError(std::string(ChannelName(channel)) + " missing at the " + landmark +
                         " landmark (t=" + FormatDouble(t_ms) + " ms)");
  }
  return *v;
}

}  // namespace

Landmarks ComputeLandmarks(double onset_ms, double offset_ms) {
  if (!std::isfinite(onset_ms) || !std::isfinite(offset_ms) || !(onset_ms < offset_ms)) {
    throw DomainError("landmarks need onset < offset (got " + FormatDouble(onset_ms) + ", " +
                      FormatDouble(offset_ms) + ")");
  }
  const double duration = offset_ms - onset_ms;
  Landmarks lm;
  lm.t33_ms = onset_ms + kLowerFraction * duration;
  lm.t66_ms = onset_ms + kUpperFraction * duration;
  lm.d_ds = (lm.t66_ms - lm.t33_ms) / kMsPerDecisecond;
  return lm;
}

VowelSegment VowelSegment::FromInterval(double onset_ms, double offset_ms, SegmentLabels labels) {
  VowelSegment s;
  s.onset_ms = onset_ms;
  s.offset_ms = offset_ms;
  s.landmarks = ComputeLandmarks(onset_ms, offset_ms);
  s.labels = std::move(labels);
  return s;
}

VowelSegment VowelSegment::FromManifest(const ManifestEntry& e) {
  return FromInterval(e.onset_ms, e.offset_ms,
                      SegmentLabels{e.vowel_label, e.class_label, e.language, e.source});
}

std::optional<double> SampleAt(const FormantTrack& track, double t_ms, Channel channel) {
  const auto& frames = track.frames;
  if (frames.empty() || !(t_ms >= frames.front().time_ms && t_ms <= frames.back().time_ms)) {
    throw DomainError("t=" + FormatDouble(t_ms) + " ms lies outside the track span");
  }
  auto upper = std::upper_bound(frames.begin(), frames.end(), t_ms,
                                [](double t, const FormantFrame& f) { return t < f.time_ms; });
  // upper points past the last frame with time <= t.
  const FormantFrame& left = *(upper - 1);
  if (left.time_ms == t_ms) return left.Get(channel);
  const FormantFrame& right = *upper;
  const auto& a = left.Get(channel);
  const auto& b = right.Get(channel);
  if (!a || !b) return std::nullopt;
  const double w = (t_ms - left.time_ms) / (right.time_ms - left.time_ms);
  return *a + w * (*b - *a);
}

double ThetaN(const FormantTrack& track, const VowelSegment& segment, int n) {
  const Channel channel = FormantChannel(n);
  const double z33 = HzToBark(RequireFormant(track, segment.landmarks.t33_ms, channel, "33%"));
  const double z66 = HzToBark(RequireFormant(track, segment.landmarks.t66_ms, channel, "66%"));
  return std::atan((z66 - z33) / segment.landmarks.d_ds);
}

double ThetaF1Hz(const FormantTrack& track, const VowelSegment& segment) {
  const double f33 = RequireFormant(track, segment.landmarks.t33_ms, Channel::kF1, "33%");
  const double f66 = RequireFormant(track, segment.landmarks.t66_ms, Channel::kF1, "66%");
  return std::atan((f66 - f33) / segment.landmarks.d_ds);
}

double PolyModel::Evaluate(double t_ds, int derivative) const {
  // Horner on the derivative's coefficients.
  double acc = 0.0;
  for (int i = degree; i >= derivative; --i) {
    double c = coefficients[static_cast<std::size_t>(i)];
    for (int k = 0; k < derivative; ++k) c *= (i - k);
    acc = acc * t_ds + c;
  }
  return acc;
}

void PolyModel::CheckInside(double t_ds) const {
  const double length = window.length_ds();
  const double slack = kWindowSlack * std::max(1.0, length);
  if (!(t_ds >= -slack && t_ds <= length + slack)) {
    throw DomainError("t=" + FormatDouble(t_ds) + " ds lies outside the fit window [0, " +
                      FormatDouble(length) + "] ds; extrapolation is not supported");
  }
}

PolyModel FitPoly(const FormantTrack& track, const FitWindow& window, int degree, int formant) {
  if (degree < kMinFitDegree || degree > kMaxFitDegree) {
    throw DomainError("fit degree must be within 1..6, got " + std::to_string(degree));
  }
  if (!(window.start_ms < window.end_ms)) throw DomainError("fit window is empty");
  const Channel channel = FormantChannel(formant);

  std::vector<double> times;
  std::vector<double> barks;
  for (const FormantFrame& f : track.frames) {
    if (f.time_ms < window.start_ms || f.time_ms > window.end_ms) continue;
    const auto& hz = f.Get(channel);
    if (!hz) continue;
    times.push_back((f.time_ms - window.start_ms) / kMsPerDecisecond);
    barks.push_back(HzToBark(*hz));
  }
  const auto n = static_cast<Eigen::Index>(times.size());
  if (n < degree + 2) {
    throw FitError("fit needs at least " + std::to_string(degree + 2) + " frames with " +
                   ChannelName(channel) + " inside the window, found " + std::to_string(n));
  }

  Eigen::MatrixXd design(n, degree + 1);
  Eigen::VectorXd z(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    double power = 1.0;
    for (int c = 0; c <= degree; ++c) {
      design(r, c) = power;
      power *= times[static_cast<std::size_t>(r)];
    }
    z(r) = barks[static_cast<std::size_t>(r)];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < degree + 1) throw FitError("rank-deficient design matrix");
  Eigen::VectorXd c = qr.solve(z);

  PolyModel model;
  model.degree = degree;
  model.window = window;
  model.channel_formant = formant;
  model.sample_count = static_cast<int>(n);
  model.coefficients.assign(c.data(), c.data() + c.size());
  model.residual_rms = std::sqrt((design * c - z).squaredNorm() / static_cast<double>(n));
  return model;
}

double ZDerivative(const PolyModel& model, double t_ds) {
  model.CheckInside(t_ds);
  return model.Evaluate(t_ds, 1);
}

double InstantaneousTheta(const PolyModel& model, double t_ds) {
  return std::atan(ZDerivative(model, t_ds));
}

double FiniteStepTheta(const PolyModel& model, double t_ds, double dt_ds) {
  model.CheckInside(t_ds);
  model.CheckInside(t_ds + dt_ds);
  return std::atan((model.Evaluate(t_ds + dt_ds) - model.Evaluate(t_ds)) / dt_ds);
}

Acceleration ATense(const PolyModel& model, double t_ds) {
  model.CheckInside(t_ds);
  if (model.degree < 2) return {0.0, true};
  return {model.Evaluate(t_ds, 2), false};
}

double DeviationIndex(double f1_hz, double f_neu_hz) { return std::abs(f1_hz - f_neu_hz); }

TensenessRecord ComputeIndicators(const FormantTrack& track, const VowelSegment& segment) {
  TensenessRecord rec;
  const Landmarks& lm = segment.landmarks;
  rec.f1_33_hz = RequireFormant(track, lm.t33_ms, Channel::kF1, "33%");
  rec.f1_66_hz = RequireFormant(track, lm.t66_ms, Channel::kF1, "66%");
  rec.z1_33_bark = HzToBark(rec.f1_33_hz);
  rec.theta1_rad = std::atan((HzToBark(rec.f1_66_hz) - rec.z1_33_bark) / lm.d_ds);
  rec.theta_f1_rad = std::atan((rec.f1_66_hz - rec.f1_33_hz) / lm.d_ds);
  rec.f0_33_hz = SampleAt(track, lm.t33_ms, Channel::kF0);
  rec.f0_66_hz = SampleAt(track, lm.t66_ms, Channel::kF0);
  if (rec.f0_33_hz && rec.f0_66_hz) rec.delta_f0_hz = *rec.f0_66_hz - *rec.f0_33_hz;
  rec.d_ds = lm.d_ds;
  rec.labels = segment.labels;
  return rec;
}

}  // namespace vtense
