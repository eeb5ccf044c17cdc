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

// Tenseness indicators computed from a formant track: 33%/66% landmarks,
// formant angles over the landmark window, polynomial trajectory fits in
// Bark, and their first and second time derivatives.
//
// Units: track times are milliseconds; the landmark window duration and all
// fitted trajectories use deciseconds (ms / 100), so angles are
// arctan(Bark per decisecond).

#ifndef VTENSE_TENSENESS_H_
#define VTENSE_TENSENESS_H_

#include <optional>
#include <string>
#include <vector>

#include "vtense/ingest.h"

namespace vtense {

inline constexpr double kMsPerDecisecond = 100.0;
inline constexpr double kDefaultNeutralF1Hz = 500.0;

struct Landmarks {
  double t33_ms = 0.0;
  double t66_ms = 0.0;
  double d_ds = 0.0;  // (t66 - t33) / 100
};

// Throws DomainError unless onset < offset.
Landmarks ComputeLandmarks(double onset_ms, double offset_ms);

struct SegmentLabels {
  std::string vowel_label;
  std::string class_label;
  std::string language;
  std::string source;
};

struct VowelSegment {
  double onset_ms = 0.0;
  double offset_ms = 0.0;
  Landmarks landmarks;
  SegmentLabels labels;

  static VowelSegment FromInterval(double onset_ms, double offset_ms, SegmentLabels labels = {});
  static VowelSegment FromManifest(const ManifestEntry& entry);
};

// Linear interpolation of `channel` at t_ms. Missing when either bracketing
// frame lacks the channel; a knot returns its own value. Throws DomainError
// when t_ms lies outside the track span.
std::optional<double> SampleAt(const FormantTrack& track, double t_ms, Channel channel);

// arctan((Z_n66 - Z_n33) / d) with Z from the Bark conversion of formant n.
// Throws IndicatorError when the formant is missing at a landmark.
double ThetaN(const FormantTrack& track, const VowelSegment& segment, int n);

// Hz variant for F1: arctan((F1_66 - F1_33) / d).
double ThetaF1Hz(const FormantTrack& track, const VowelSegment& segment);

struct FitWindow {
  double start_ms = 0.0;
  double end_ms = 0.0;

  double length_ds() const { return (end_ms - start_ms) / kMsPerDecisecond; }
};

// Z(t) = sum_i c_i t^i with t in deciseconds measured from window.start_ms.
struct PolyModel {
  std::vector<double> coefficients;  // c_0 .. c_n
  int degree = 0;
  FitWindow window;
  double residual_rms = 0.0;  // Bark
  int channel_formant = 1;
  int sample_count = 0;

  // k-th derivative of Z at t (no window check).
  double Evaluate(double t_ds, int derivative = 0) const;
  // Throws DomainError when t lies outside [0, window.length_ds()].
  void CheckInside(double t_ds) const;
};

inline constexpr int kMinFitDegree = 1;
inline constexpr int kMaxFitDegree = 6;

// Least-squares fit of Bark-converted formant n against deciseconds from
// window start. Uses frames inside the window (inclusive) where the formant
// is present. Throws FitError with fewer than degree + 2 usable frames or a
// rank-deficient design, DomainError for an empty window or bad degree.
PolyModel FitPoly(const FormantTrack& track, const FitWindow& window, int degree, int formant = 1);

// dZ/dt in Bark per decisecond.
double ZDerivative(const PolyModel& model, double t_ds);

// arctan(dZ/dt): the limit of the finite-step formant angle.
double InstantaneousTheta(const PolyModel& model, double t_ds);

// The finite-step angle arctan((Z(t + dt) - Z(t)) / dt). Both t and t + dt
// must lie in the window.
double FiniteStepTheta(const PolyModel& model, double t_ds, double dt_ds);

struct Acceleration {
  double value = 0.0;  // Bark per decisecond^2
  bool degenerate_degree = false;
};

// d^2Z/dt^2; for a cubic exactly 6 c3 t + 2 c2. Models of degree < 2 yield 0
// with degenerate_degree set.
Acceleration ATense(const PolyModel& model, double t_ds);

// |F1 - F_neu|.
double DeviationIndex(double f1_hz, double f_neu_hz);

struct TensenessRecord {
  double theta1_rad = 0.0;
  double theta_f1_rad = 0.0;
  double f1_33_hz = 0.0;
  double f1_66_hz = 0.0;
  double z1_33_bark = 0.0;
  std::optional<double> f0_33_hz;
  std::optional<double> f0_66_hz;
  std::optional<double> delta_f0_hz;  // F0_66 - F0_33
  double d_ds = 0.0;
  SegmentLabels labels;
};

TensenessRecord ComputeIndicators(const FormantTrack& track, const VowelSegment& segment);

}  // namespace vtense

#endif  // VTENSE_TENSENESS_H_
