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

// Formant and F0 estimation from mono audio: autocorrelation LPC with the
// Levinson-Durbin recursion, root solving of the prediction polynomial, and
// an autocorrelation pitch estimator sharing the same framing.

#ifndef VTENSE_FORMANT_EXTRACT_H_
#define VTENSE_FORMANT_EXTRACT_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vtense/ingest.h"

namespace vtense {

// Predictor x[n] ~ sum_k a_k x[n-k]; the inverse filter is
// A(z) = 1 - sum_k a_k z^-k.
struct LpcModel {
  std::vector<double> coefficients;  // a_1 .. a_p
  int order = 0;
  double gain = 0.0;             // sqrt of the final prediction error power
  double prediction_gain = 1.0;  // r[0] / final error power, >= 1

  // Power response 1 / |A(e^{jw})|^2 at `frequency_hz` (gain excluded).
  double InverseFilterPowerResponse(double frequency_hz, double sample_rate_hz) const;
};

struct ExtractionConfig {
  double frame_ms = 25.0;
  double hop_ms = 10.0;
  double preemphasis = 0.97;
  std::optional<int> lpc_order;  // default 2 + round(fs / 1000)
  double max_formant_hz = 5500.0;
  double bandwidth_max_hz = 400.0;
  double f0_min_hz = 60.0;
  double f0_max_hz = 400.0;
  double voicing_threshold = 0.3;

  int OrderFor(int sample_rate_hz) const;
  // Throws ConfigError when the settings cannot be used at this rate.
  void Validate(int sample_rate_hz) const;
  // `key=value` lines recorded in output files.
  std::vector<std::string> Describe(int sample_rate_hz) const;
};

struct FormantCandidate {
  double frequency_hz = 0.0;
  double bandwidth_hz = 0.0;
};

// Returns nullopt for a zero-energy (silent) frame. Throws DomainError when
// order < 2 or the frame is not longer than the order.
std::optional<LpcModel> LpcCoefficients(std::span<const double> frame, int order);

// Roots of the prediction polynomial with positive imaginary part, converted
// to (frequency, bandwidth), sorted by frequency and kept when
// 50 < f < min(max_formant_hz, fs/2) and 0 < bw < bandwidth_max_hz.
// Throws ExtractionError when the eigenvalue iteration does not converge.
std::vector<FormantCandidate> FormantsFromLpc(const LpcModel& model, double sample_rate_hz,
                                              double max_formant_hz = 5500.0,
                                              double bandwidth_max_hz = 400.0);

struct FrameGrid {
  int frame_length = 0;  // samples
  int hop = 0;           // samples
  int count = 0;

  double CenterMs(int index, int sample_rate_hz) const;
};

// Throws ConfigError if the audio is shorter than one frame.
FrameGrid MakeFrameGrid(const AudioBuffer& audio, const ExtractionConfig& config);

// Per-hop Hamming-windowed LPC analysis. F1..F3 are the first three passing
// candidates; frames that fail or are silent carry missing formants. F0 is
// left absent.
FormantTrack TrackFormants(const AudioBuffer& audio, const ExtractionConfig& config);

struct PitchFrame {
  double time_ms = 0.0;
  std::optional<double> f0_hz;
};

// Normalized autocorrelation peak picking in the lag band [fs/f0_max,
// fs/f0_min] with a voicing threshold on the peak height. The shortest-lag
// peak within 90% of the best one is taken.
std::vector<PitchFrame> EstimateF0(const AudioBuffer& audio, const ExtractionConfig& config);

// TrackFormants with F0 from EstimateF0 merged in.
FormantTrack ExtractTrack(const AudioBuffer& audio, const ExtractionConfig& config);

}  // namespace vtense

#endif  // VTENSE_FORMANT_EXTRACT_H_
