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

#include "vtense/dynamics.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "vtense/error.h"
#include "vtense/scales.h"
#include "vtense/text_io.h"

namespace vtense {

namespace {

constexpr double kGeometryTolerance = 1e-9;

bool Positive(double v) { return std::isfinite(v) && v > 0.0; }

void CheckStep(double duration_ds, double step_ds) {
  if (!Positive(step_ds)) throw DomainError("integration step must be positive");
  if (!Positive(duration_ds)) throw DomainError("simulation duration must be positive");
}

// Number of RK4 steps; the last one may be shorter than step_ds.
long StepCount(double duration_ds, double step_ds) {
  return std::max(1L, static_cast<long>(std::ceil(duration_ds / step_ds - 1e-9)));
}

struct Phase {
  double q;
  double v;
};

// One classical RK4 step of q'' = accel(t, q).
template <typename Accel>
Phase Rk4Step(const Accel& accel, double t, double h, Phase s) {
  const double k1q = s.v;
  const double k1v = accel(t, s.q);
  const double k2q = s.v + 0.5 * h * k1v;
  const double k2v = accel(t + 0.5 * h, s.q + 0.5 * h * k1q);
  const double k3q = s.v + 0.5 * h * k2v;
  const double k3v = accel(t + 0.5 * h, s.q + 0.5 * h * k2q);
  const double k4q = s.v + h * k3v;
  const double k4v = accel(t + h, s.q + h * k3q);
  return {s.q + h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q),
          s.v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)};
}

template <typename Accel, typename Check>
std::vector<Phase> Integrate(const Accel& accel, const Check& check, Phase init, double t0,
                             double duration_ds, double step_ds, std::vector<double>& times) {
  const long n = StepCount(duration_ds, step_ds);
  std::vector<Phase> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  times.reserve(static_cast<std::size_t>(n) + 1);
  out.push_back(init);
  times.push_back(t0);
  check(t0, init);
  Phase s = init;
  for (long i = 0; i < n; ++i) {
    const double t = t0 + static_cast<double>(i) * step_ds;
    const double t_next = (i == n - 1) ? t0 + duration_ds : t0 + static_cast<double>(i + 1) * step_ds;
    s = Rk4Step(accel, t, t_next - t, s);
    check(t_next, s);
    out.push_back(s);
    times.push_back(t_next);
  }
  return out;
}

}  // namespace

void ForceConstants::Validate() const {
  if (!Positive(mass_m) || !Positive(coeff_k)) {
    throw DomainError("mass m and coefficient k must be positive and finite");
  }
}

double FTense(const ForceConstants& constants, double a_tense) {
  return constants.mass_m * constants.coeff_k * a_tense;
}

double ForceProfile::MeanAbsForce() const {
  if (f_tense.empty()) return 0.0;
  double sum = 0.0;
  for (double f : f_tense) sum += std::abs(f);
  return sum / static_cast<double>(f_tense.size());
}

ForceProfile ComputeForceProfile(const PolyModel& model, const ForceConstants& constants, int n_samples) {
  constants.Validate();
  if (n_samples < 2) throw DomainError("force profile needs at least 2 samples");
  ForceProfile profile;
  profile.constants = constants;
  const double length = model.window.length_ds();
  for (int i = 0; i < n_samples; ++i) {
    const double t = (i == n_samples - 1) ? length : length * i / (n_samples - 1);
    const Acceleration a = ATense(model, t);
    profile.times_ds.push_back(t);
    profile.a_tense.push_back(a.value);
    profile.f_tense.push_back(FTense(constants, a.value));
    profile.degenerate_degree = profile.degenerate_degree || a.degenerate_degree;
  }
  return profile;
}

double HelmholtzFrequency(const CavityGeometry& g) {
  if (!Positive(g.speed_of_sound) || !Positive(g.length_back) || !Positive(g.length_constriction)) {
    throw DomainError("speed of sound and cavity lengths must be positive");
  }
  const bool have_areas = g.area_constriction || g.area_back;
  const bool have_diameters = g.diameter_constriction || g.diameter_back;
  if (have_areas && !(g.area_constriction && g.area_back)) {
    throw DomainError("both areas A_c and A_b are required");
  }
  if (have_diameters && !(g.diameter_constriction && g.diameter_back)) {
    throw DomainError("both diameters d and D are required");
  }
  if (!have_areas && !have_diameters) throw DomainError("cavity geometry needs areas or diameters");

  const double c = g.speed_of_sound;
  const double lengths = g.length_back * g.length_constriction;
  std::optional<double> from_areas;
  std::optional<double> from_diameters;
  if (have_areas) {
    if (!Positive(*g.area_constriction) || !Positive(*g.area_back)) {
      throw DomainError("areas must be positive");
    }
    from_areas = c / (2.0 * std::numbers::pi) *
                 std::sqrt(*g.area_constriction / (*g.area_back * lengths));
  }
  if (have_diameters) {
    if (!Positive(*g.diameter_constriction) || !Positive(*g.diameter_back)) {
      throw DomainError("diameters must be positive");
    }
    from_diameters = *g.diameter_constriction * c /
                     (2.0 * std::numbers::pi * *g.diameter_back * std::sqrt(lengths));
  }
  if (from_areas && from_diameters) {
    auto disc = [](double d) { return std::numbers::pi * d * d / 4.0; };
    const bool consistent =
        std::abs(disc(*g.diameter_constriction) - *g.area_constriction) <=
            kGeometryTolerance * *g.area_constriction &&
        std::abs(disc(*g.diameter_back) - *g.area_back) <= kGeometryTolerance * *g.area_back;
    if (!consistent) throw DomainError("areas and diameters disagree (A = pi (d/2)^2 expected)");
  }
  return from_areas ? *from_areas : *from_diameters;
}

std::vector<XSample> SimulateX(const ForceFunction& force, const ForceConstants& constants,
                               const SimState& init, double duration_ds, double step_ds) {
  constants.Validate();
  CheckStep(duration_ds, step_ds);
  const double inertia = constants.mass_m * constants.coeff_k;
  auto accel = [&](double t, double) { return force(t) / inertia; };
  auto check = [](double t, const Phase& s) {
    if (!std::isfinite(s.q) || !std::isfinite(s.v)) throw SimulationError("non-finite x state", t);
    if (s.q < 0.0) throw SimulationError("x became negative (tongue crossed the palate)", t);
  };
  std::vector<double> times;
  auto states = Integrate(accel, check, Phase{init.x, init.vx}, init.t_ds, duration_ds, step_ds, times);
  std::vector<XSample> out;
  out.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) out.push_back({times[i], states[i].q, states[i].v});
  return out;
}

std::vector<YSample> SimulateYOscillator(const OscillatorParams& params, double mass,
                                         const SimState& init, double duration_ds, double step_ds) {
  if (!Positive(params.spring_p)) throw DomainError("spring constant p must be positive");
  if (!Positive(mass)) throw DomainError("mass must be positive");
  if (!std::isfinite(params.equilibrium_y0)) throw DomainError("y0 must be finite");
  CheckStep(duration_ds, step_ds);
  auto accel = [&](double, double y) { return -params.spring_p * (y - params.equilibrium_y0) / mass; };
  auto check = [](double t, const Phase& s) {
    if (!std::isfinite(s.q) || !std::isfinite(s.v)) throw SimulationError("non-finite y state", t);
  };
  std::vector<double> times;
  auto states = Integrate(accel, check, Phase{init.y, init.vy}, init.t_ds, duration_ds, step_ds, times);
  std::vector<YSample> out;
  out.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) out.push_back({times[i], states[i].q, states[i].v});
  return out;
}

std::optional<double> OscillationPeriod(const std::vector<YSample>& trajectory, double y0) {
  std::vector<double> crossings;
  for (std::size_t i = 0; i + 1 < trajectory.size(); ++i) {
    const YSample& a = trajectory[i];
    const YSample& b = trajectory[i + 1];
    const double ya = a.y - y0;
    const double yb = b.y - y0;
    if (!(ya < 0.0 && yb >= 0.0)) continue;
    const double h = b.t_ds - a.t_ds;
    // Cubic Hermite through (ya, vy_a) and (yb, vy_b) on s in [0, 1].
    auto hermite = [&](double s) {
      const double s2 = s * s;
      const double s3 = s2 * s;
      return (2 * s3 - 3 * s2 + 1) * ya + (s3 - 2 * s2 + s) * h * a.vy + (-2 * s3 + 3 * s2) * yb +
             (s3 - s2) * h * b.vy;
    };
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      (hermite(mid) < 0.0 ? lo : hi) = mid;
    }
    crossings.push_back(a.t_ds + 0.5 * (lo + hi) * h);
  }
  if (crossings.size() < 2) return std::nullopt;
  return (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
}

double OscillatorEnergy(const OscillatorParams& params, double mass, double y, double vy) {
  const double dy = y - params.equilibrium_y0;
  return 0.5 * mass * vy * vy + 0.5 * params.spring_p * dy * dy;
}

FormantTrack SynthTrack(const AccelerationFunction& accel, double z_start_bark, double zslope_start,
                        double duration_ms, double frame_step_ms, const SynthOptions& options) {
  if (!Positive(duration_ms) || !Positive(frame_step_ms)) {
    throw DomainError("duration_ms and frame_step_ms must be positive");
  }
  if (options.substeps < 1) throw DomainError("substeps must be at least 1");
  if (!(z_start_bark > kBarkInfimum && z_start_bark < kBarkSupremum)) {
    throw SimulationError("z_start outside the Bark range", 0.0);
  }
  const long frames = static_cast<long>(std::floor(duration_ms / frame_step_ms + 1e-9)) + 1;
  if (frames < 2) throw DomainError("duration must cover at least two frames");
  const double frame_step_ds = frame_step_ms / kMsPerDecisecond;
  const double span_ds = static_cast<double>(frames - 1) * frame_step_ds;

  // x = Z + 0.53 keeps the palate-distance coordinate positive exactly while
  // Z stays above the Bark infimum.
  SimState init;
  init.x = z_start_bark - kBarkInfimum;
  init.vx = zslope_start;
  std::vector<XSample> path;
  try {
    path = SimulateX(accel, ForceConstants{1.0, 1.0}, init, span_ds,
                     frame_step_ds / options.substeps);
  } catch (const SimulationError& e) {
    throw SimulationError("Z left the Bark range", e.t_ds());
  }

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> noise(0.0, options.noise_sigma_bark > 0.0 ? options.noise_sigma_bark : 1.0);

  FormantTrack track;
  track.frames.reserve(static_cast<std::size_t>(frames));
  for (long k = 0; k < frames; ++k) {
    const XSample& s = path[static_cast<std::size_t>(k * options.substeps)];
    double z = s.x + kBarkInfimum;
    if (options.noise_sigma_bark > 0.0) z += noise(rng);
    const double t_ds = static_cast<double>(k) * frame_step_ds;
    if (!(z > kBarkInfimum && z < kBarkSupremum)) {
      throw SimulationError("Z left the Bark range (Z=" + FormatDouble(z) + ")", t_ds);
    }
    FormantFrame frame;
    frame.time_ms = static_cast<double>(k) * frame_step_ms;
    frame.f1_hz = BarkToHz(z);
    if (options.f0_start_hz) {
      const double f0 = *options.f0_start_hz + options.f0_slope_hz_per_ds * t_ds;
      if (!(f0 > 0.0)) throw SimulationError("F0 contour became non-positive", t_ds);
      frame.f0_hz = f0;
    }
    track.frames.push_back(frame);
  }
  return track;
}

}  // namespace vtense
