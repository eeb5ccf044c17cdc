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

// Force of tenseness, Helmholtz resonance, and a forward simulator for the
// mass-point articulator model.
//
// The x-axis points down from the palate (x = 0) to the tongue surface. The
// force law is m k x'' = F(t): Bark-space acceleration stands in for
// displacement acceleration through the constant k, with no gravity or other
// external loads. The y-axis is a plain harmonic oscillator,
// m y'' = -p (y - y0). Both are integrated with fixed-step classical RK4.

#ifndef VTENSE_DYNAMICS_H_
#define VTENSE_DYNAMICS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vtense/ingest.h"
#include "vtense/tenseness.h"

namespace vtense {

struct ForceConstants {
  double mass_m = 1.0;
  double coeff_k = 1.0;

  // Throws DomainError unless both are positive and finite.
  void Validate() const;
};

// m k a_tense.
double FTense(const ForceConstants& constants, double a_tense);

struct ForceProfile {
  std::vector<double> times_ds;
  std::vector<double> a_tense;
  std::vector<double> f_tense;
  ForceConstants constants;
  bool degenerate_degree = false;

  double MeanAbsForce() const;
};

// Uniform grid of n_samples points over [0, window length] (endpoints
// included). Throws DomainError for n_samples < 2.
ForceProfile ComputeForceProfile(const PolyModel& model, const ForceConstants& constants, int n_samples);

// Either areas or diameters (or both, if consistent) describe the cavity and
// its neck. Lengths in cm, speed of sound in cm/s.
struct CavityGeometry {
  double speed_of_sound = 35000.0;
  double length_back = 0.0;         // l_b
  double length_constriction = 0.0;  // l_c
  std::optional<double> area_constriction;  // A_c
  std::optional<double> area_back;          // A_b
  std::optional<double> diameter_constriction;  // d
  std::optional<double> diameter_back;          // D
};

// f = (c / 2 pi) sqrt(A_c / (A_b l_b l_c)), or the diameter form
// d c / (2 pi D sqrt(l_b l_c)). Throws DomainError for non-positive or
// missing geometry, or when both forms are given and disagree.
double HelmholtzFrequency(const CavityGeometry& geometry);

struct SimState {
  double x = 0.0;   // palate-to-tongue distance (Bark-equivalent units)
  double vx = 0.0;
  double y = 0.0;
  double vy = 0.0;
  double t_ds = 0.0;
};

struct XSample {
  double t_ds;
  double x;
  double vx;
};

struct YSample {
  double t_ds;
  double y;
  double vy;
};

using ForceFunction = std::function<double(double t_ds)>;

// Integrates m k x'' = F(t) from init.t_ds to init.t_ds + duration_ds. The
// last step is shortened to land exactly on the end time. Throws
// SimulationError if the state turns non-finite or x becomes negative.
std::vector<XSample> SimulateX(const ForceFunction& force, const ForceConstants& constants,
                               const SimState& init, double duration_ds, double step_ds);

struct OscillatorParams {
  double spring_p = 1.0;
  double equilibrium_y0 = 0.0;
};

std::vector<YSample> SimulateYOscillator(const OscillatorParams& params, double mass,
                                         const SimState& init, double duration_ds, double step_ds);

// Mean spacing of upward crossings of y0, located by cubic Hermite
// interpolation. Returns nullopt with fewer than two crossings.
std::optional<double> OscillationPeriod(const std::vector<YSample>& trajectory, double y0);

double OscillatorEnergy(const OscillatorParams& params, double mass, double y, double vy);

using AccelerationFunction = std::function<double(double t_ds)>;

struct SynthOptions {
  double noise_sigma_bark = 0.0;
  std::uint64_t seed = 0;
  // Optional linear F0 contour in Hz and Hz per decisecond.
  std::optional<double> f0_start_hz;
  double f0_slope_hz_per_ds = 0.0;
  // RK4 sub-steps per frame.
  int substeps = 20;
};

// Builds Z1(t) by double integration of the prescribed Bark acceleration
// (the x-axis simulator with m = k = 1), samples it every frame_step_ms from
// 0 to duration_ms, and maps it to F1 via the inverse Bark conversion.
// Throws SimulationError if Z leaves the Bark range.
FormantTrack SynthTrack(const AccelerationFunction& accel, double z_start_bark,
                        double zslope_start, double duration_ms, double frame_step_ms,
                        const SynthOptions& options = {});

}  // namespace vtense

#endif  // VTENSE_DYNAMICS_H_
