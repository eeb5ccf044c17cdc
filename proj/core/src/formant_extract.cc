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
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "vtense/error.h"
#include "vtense/text_io.h"

namespace vtense {

namespace {

// Reflection coefficients are kept strictly inside the unit interval so the
// inverse filter stays minimum phase even for perfectly predictable frames.
constexpr double kReflectionLimit = 1.0 - 1e-12;
constexpr double kSilenceEnergy = 1e-24;
constexpr int kEigenMaxIterations = 500;
constexpr double kOctaveTolerance = 0.9;

// Parlett-Reinsch balancing with radix-2 scaling.
void Balance(Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  constexpr double kRadix = 2.0;
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double row = 0.0;
      double col = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        col += std::abs(m(j, i));
        row += std::abs(m(i, j));
      }
      if (col == 0.0 || row == 0.0) continue;
      double g = row / kRadix;
      double f = 1.0;
      const double s = col + row;
      while (col < g) {
        f *= kRadix;
        col *= kRadix * kRadix;
      }
      g = row * kRadix;
      while (col > g) {
        f /= kRadix;
        col /= kRadix * kRadix;
      }
      if ((col + row) / f < 0.95 * s) {
        done = false;
        m.row(i) /= f;
        m.col(i) *= f;
      }
    }
  }
}

}  // namespace

double LpcModel::InverseFilterPowerResponse(double frequency_hz, double sample_rate_hz) const {
  const double w = 2.0 * std::numbers::pi * frequency_hz / sample_rate_hz;
  std::complex<double> a(1.0, 0.0);
  for (int k = 1; k <= order; ++k) {
    a -= coefficients[static_cast<std::size_t>(k - 1)] * std::polar(1.0, -w * k);
  }
  return 1.0 / std::norm(a);
}

int ExtractionConfig::OrderFor(int sample_rate_hz) const {
  if (lpc_order) return *lpc_order;
  return 2 + static_cast<int>(std::lround(sample_rate_hz / 1000.0));
}

void ExtractionConfig::Validate(int sample_rate_hz) const {
  if (sample_rate_hz <= 0) throw ConfigError("sample rate must be positive");
  if (!(hop_ms > 0.0)) throw ConfigError("hop_ms must be positive");
  if (!(frame_ms > hop_ms)) throw ConfigError("frame_ms must exceed hop_ms");
  if (!(preemphasis >= 0.0 && preemphasis < 1.0)) throw ConfigError("preemphasis must lie in [0, 1)");
  if (OrderFor(sample_rate_hz) < 2) throw ConfigError("lpc_order must be at least 2");
  if (!(max_formant_hz > 50.0)) throw ConfigError("max_formant_hz must exceed 50 Hz");
  if (!(bandwidth_max_hz > 0.0)) throw ConfigError("bandwidth_max_hz must be positive");
  if (!(f0_min_hz > 0.0 && f0_min_hz < f0_max_hz)) {
    throw ConfigError("f0 band requires 0 < f0_min_hz < f0_max_hz");
  }
  if (sample_rate_hz / f0_max_hz < 2.0) {
    throw ConfigError("f0_max_hz too high for the sample rate: shortest lag fs/f0_max is below 2 samples");
  }
  const double frame_samples = frame_ms * sample_rate_hz / 1000.0;
  if (std::ceil(sample_rate_hz / f0_min_hz) >= frame_samples) {
    throw ConfigError("frame_ms too short for f0_min_hz: the longest pitch lag exceeds the frame");
  }
  if (OrderFor(sample_rate_hz) >= frame_samples) {
    throw ConfigError("lpc_order must be smaller than the frame length");
  }
}

std::vector<std::string> ExtractionConfig::Describe(int sample_rate_hz) const {
  return {
      "frame_ms=" + FormatDouble(frame_ms),
      "hop_ms=" + FormatDouble(hop_ms),
      "preemphasis=" + FormatDouble(preemphasis),
      "lpc_order=" + std::to_string(OrderFor(sample_rate_hz)),
      "max_formant_hz=" + FormatDouble(max_formant_hz),
      "bandwidth_max_hz=" + FormatDouble(bandwidth_max_hz),
      "f0_min_hz=" + FormatDouble(f0_min_hz),
      "f0_max_hz=" + FormatDouble(f0_max_hz),
      "voicing_threshold=" + FormatDouble(voicing_threshold),
      "window=hamming",
  };
}

std::optional<LpcModel> LpcCoefficients(std::span<const double> frame, int order) {
  if (order < 2) throw DomainError("LPC order must be at least 2");
  if (frame.size() <= static_cast<std::size_t>(order)) {
    throw DomainError("frame must be longer than the LPC order");
  }
  const auto p = static_cast<std::size_t>(order);
  std::vector<double> r(p + 1, 0.0);
  for (std::size_t lag = 0; lag <= p; ++lag) {
    double acc = 0.0;
    for (std::size_t n = lag; n < frame.size(); ++n) acc += frame[n] * frame[n - lag];
    r[lag] = acc;
  }
  if (!(r[0] > kSilenceEnergy)) return std::nullopt;

  std::vector<double> a(p + 1, 0.0);
  std::vector<double> prev(p + 1, 0.0);
  double error = r[0];
  for (std::size_t i = 1; i <= p; ++i) {
    double acc = r[i];
    for (std::size_t j = 1; j < i; ++j) acc -= a[j] * r[i - j];
    double k = std::clamp(acc / error, -kReflectionLimit, kReflectionLimit);
    prev = a;
    a[i] = k;
    for (std::size_t j = 1; j < i; ++j) a[j] = prev[j] - k * prev[i - j];
    error *= (1.0 - k * k);
  }

  LpcModel model;
  model.order = order;
  model.coefficients.assign(a.begin() + 1, a.end());
  model.gain = std::sqrt(error);
  model.prediction_gain = r[0] / error;
  return model;
}

std::vector<FormantCandidate> FormantsFromLpc(const LpcModel& model, double sample_rate_hz,
                                              double max_formant_hz, double bandwidth_max_hz) {
  const int p = model.order;
  if (p < 2 || static_cast<int>(model.coefficients.size()) != p) {
    throw DomainError("invalid LPC model");
  }
  // Companion matrix of z^p - a_1 z^(p-1) - ... - a_p.
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
  for (int j = 0; j < p; ++j) companion(0, j) = model.coefficients[static_cast<std::size_t>(j)];
  for (int i = 1; i < p; ++i) companion(i, i - 1) = 1.0;
  Balance(companion);

  Eigen::EigenSolver<Eigen::MatrixXd> solver;
  solver.setMaxIterations(kEigenMaxIterations);
  solver.compute(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw ExtractionError("root finder did not converge");
  }

  const double ceiling = std::min(max_formant_hz, sample_rate_hz / 2.0);
  std::vector<FormantCandidate> out;
  for (const std::complex<double>& root : solver.eigenvalues()) {
    if (!(root.imag() > 0.0)) continue;
    FormantCandidate c;
    c.frequency_hz = std::arg(root) * sample_rate_hz / (2.0 * std::numbers::pi);
    c.bandwidth_hz = -std::log(std::abs(root)) * sample_rate_hz / std::numbers::pi;
    if (c.frequency_hz > 50.0 && c.frequency_hz < ceiling && c.bandwidth_hz > 0.0 &&
        c.bandwidth_hz < bandwidth_max_hz) {
      out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end(), [](const FormantCandidate& x, const FormantCandidate& y) {
    return x.frequency_hz < y.frequency_hz;
  });
  return out;
}

double FrameGrid::CenterMs(int index, int sample_rate_hz) const {
  return (static_cast<double>(index) * hop + frame_length / 2.0) * 1000.0 / sample_rate_hz;
}

FrameGrid MakeFrameGrid(const AudioBuffer& audio, const ExtractionConfig& config) {
  config.Validate(audio.sample_rate_hz);
  FrameGrid grid;
  grid.frame_length = static_cast<int>(std::lround(config.frame_ms * audio.sample_rate_hz / 1000.0));
  grid.hop = std::max(1, static_cast<int>(std::lround(config.hop_ms * audio.sample_rate_hz / 1000.0)));
  const auto n = static_cast<long>(audio.samples.size());
  if (n < grid.frame_length) {
    throw ConfigError("audio (" + std::to_string(n) + " samples) is shorter than one analysis frame (" +
                      std::to_string(grid.frame_length) + " samples)");
  }
  grid.count = static_cast<int>((n - grid.frame_length) / grid.hop + 1);
  return grid;
}

FormantTrack TrackFormants(const AudioBuffer& audio, const ExtractionConfig& config) {
  const FrameGrid grid = MakeFrameGrid(audio, config);
  const int order = config.OrderFor(audio.sample_rate_hz);

  std::vector<double> emphasized(audio.samples.size());
  double previous = 0.0;
  for (std::size_t i = 0; i < audio.samples.size(); ++i) {
    emphasized[i] = audio.samples[i] - config.preemphasis * previous;
    previous = audio.samples[i];
  }
  std::vector<double> window(static_cast<std::size_t>(grid.frame_length));
  for (int j = 0; j < grid.frame_length; ++j) {
    window[static_cast<std::size_t>(j)] =
        0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * j / (grid.frame_length - 1));
  }

  FormantTrack track;
  track.frames.reserve(static_cast<std::size_t>(grid.count));
  std::vector<double> frame(window.size());
  for (int i = 0; i < grid.count; ++i) {
    const std::size_t start = static_cast<std::size_t>(i) * static_cast<std::size_t>(grid.hop);
    for (std::size_t j = 0; j < frame.size(); ++j) frame[j] = window[j] * emphasized[start + j];
    FormantFrame out;
    out.time_ms = grid.CenterMs(i, audio.sample_rate_hz);
    if (auto model = LpcCoefficients(frame, order)) {
      try {
        auto candidates = FormantsFromLpc(*model, audio.sample_rate_hz, config.max_formant_hz,
                                          config.bandwidth_max_hz);
        for (std::size_t k = 0; k < candidates.size() && k < 3; ++k) {
          out.Get(FormantChannel(static_cast<int>(k) + 1)) = candidates[k].frequency_hz;
        }
      } catch (const ExtractionError&) {
        // Frame keeps missing formants.
      }
    }
    track.frames.push_back(out);
  }
  return track;
}

std::vector<PitchFrame> EstimateF0(const AudioBuffer& audio, const ExtractionConfig& config) {
  const FrameGrid grid = MakeFrameGrid(audio, config);
  const double fs = audio.sample_rate_hz;
  const int n = grid.frame_length;
  const int lag_min = std::max(2, static_cast<int>(std::floor(fs / config.f0_max_hz)));
  const int lag_max = std::min(n - 2, static_cast<int>(std::ceil(fs / config.f0_min_hz)));

  std::vector<PitchFrame> out;
  out.reserve(static_cast<std::size_t>(grid.count));
  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<double> r(static_cast<std::size_t>(lag_max + 2), 0.0);
  for (int i = 0; i < grid.count; ++i) {
    PitchFrame pf;
    pf.time_ms = grid.CenterMs(i, audio.sample_rate_hz);
    const std::size_t start = static_cast<std::size_t>(i) * static_cast<std::size_t>(grid.hop);
    double mean = 0.0;
    for (int j = 0; j < n; ++j) mean += audio.samples[start + static_cast<std::size_t>(j)];
    mean /= n;
    for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] = audio.samples[start + static_cast<std::size_t>(j)] - mean;

    // Normalized cross-correlation between the frame head and its lagged
    // tail; a periodic frame scores near 1 at its period regardless of lag.
    for (int lag = lag_min - 1; lag <= lag_max + 1; ++lag) {
      double cross = 0.0, head = 0.0, tail = 0.0;
      for (int j = lag; j < n; ++j) {
        const double a = x[static_cast<std::size_t>(j)];
        const double b = x[static_cast<std::size_t>(j - lag)];
        cross += a * b;
        head += b * b;
        tail += a * a;
      }
      const double energy = std::sqrt(head * tail);
      r[static_cast<std::size_t>(lag)] = energy > kSilenceEnergy ? cross / energy : 0.0;
    }
    auto at = [&](int lag) { return r[static_cast<std::size_t>(lag)]; };
    double peak = 0.0;
    for (int lag = lag_min; lag <= lag_max; ++lag) peak = std::max(peak, at(lag));
    // Shortest-lag local maximum close to the best one, so multiples of the
    // period do not win on rounding.
    int best = -1;
    for (int lag = lag_min; lag <= lag_max && best < 0; ++lag) {
      if (at(lag) >= kOctaveTolerance * peak && at(lag) >= at(lag - 1) && at(lag) >= at(lag + 1)) best = lag;
    }
    if (best > lag_min && best < lag_max && at(best) >= config.voicing_threshold) {
      const double y0 = at(best - 1);
      const double y1 = at(best);
      const double y2 = at(best + 1);
      const double denom = y0 - 2.0 * y1 + y2;
      double shift = denom < 0.0 ? 0.5 * (y0 - y2) / denom : 0.0;
      shift = std::clamp(shift, -0.5, 0.5);
      pf.f0_hz = fs / (best + shift);
    }
    out.push_back(pf);
  }
  return out;
}

FormantTrack ExtractTrack(const AudioBuffer& audio, const ExtractionConfig& config) {
  FormantTrack track = TrackFormants(audio, config);
  std::vector<PitchFrame> pitch = EstimateF0(audio, config);
  for (std::size_t i = 0; i < track.frames.size(); ++i) track.frames[i].f0_hz = pitch[i].f0_hz;
  return track;
}

}  // namespace vtense
