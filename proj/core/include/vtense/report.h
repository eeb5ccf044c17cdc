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

// Batch orchestration over corpus manifests and the file formats the command
// line tool reads and writes: records tables, statistics reports, force
// profiles and simulator scenarios.

#ifndef VTENSE_REPORT_H_
#define VTENSE_REPORT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vtense/classify.h"
#include "vtense/dynamics.h"
#include "vtense/formant_extract.h"
#include "vtense/ingest.h"
#include "vtense/stats.h"
#include "vtense/tenseness.h"

namespace vtense {

struct RunConfig {
  int fit_degree = 3;
  double f_neu_hz = kDefaultNeutralF1Hz;
  ForceConstants constants;
  PairPolicy policy;
  ExtractionConfig extraction;
  std::uint64_t seed = 0;
  std::string output_dir = ".";
  // Scheduling only; excluded from the hash because it never changes results.
  int workers = 1;

  // Throws ConfigError.
  void Validate() const;
  // Stable `key=value` lines for every result-affecting setting.
  std::vector<std::string> Describe() const;
  // 16 hex digits of FNV-1a 64 over Describe().
  std::string Hash() const;
};

struct RecordRow {
  std::string path;  // as written in the manifest
  SegmentLabels labels;
  std::optional<TensenessRecord> record;
  std::string error;  // non-empty for error rows
  // Extras reported in JSON only.
  std::optional<double> deviation_index_hz;
  std::optional<double> a_tense_mean;  // over the 33-66% window
  std::optional<double> f_tense_mean;
  std::optional<double> fit_residual_rms;
  std::string fit_error;

  bool ok() const { return record.has_value(); }
};

struct RecordsTable {
  std::vector<RecordRow> rows;
  std::string config_hash;

  int ErrorCount() const;
  std::vector<std::string> ConfigHashes() const;  // distinct, in row order
};

// Loads the track for one manifest entry: `.wav` runs formant and F0
// extraction, `.csv` is a track table, anything else a Praat Formant file.
FormantTrack LoadTrack(const std::string& path, const ExtractionConfig& extraction);

// One row per manifest entry, in manifest order. Relative paths resolve
// against base_dir. Per-entry failures become error rows. Entries may be
// processed on config.workers threads; output never depends on that count.
RecordsTable RunAnalyze(const CorpusManifest& manifest, const std::string& base_dir,
                        const RunConfig& config);

std::string RecordsToCsv(const RecordsTable& table);
std::string RecordsToJson(const RecordsTable& table, const RunConfig& config);
RecordsTable ParseRecordsCsv(std::string_view text);

struct StatsOptions {
  // Record field used as the second ANOVA factor (beside the class field).
  std::string factor_field = "source";
  std::string class_field = "class_label";
  PairPolicy policy;
  QuantileMethod quantiles = QuantileMethod::kType7;
};

// Maps a --group-by list such as "source,class" onto StatsOptions fields.
// Throws ConfigError for unknown field names.
void ApplyGrouping(std::string_view group_by, StatsOptions& options);

struct StatsReport {
  std::string text;
  std::string json;
};

StatsReport RunStats(const RecordsTable& table, const StatsOptions& options);

struct ForceRunOptions {
  std::optional<FitWindow> window;  // default: whole track span
  int degree = 3;
  int n_samples = 101;
};

struct ForceRun {
  PolyModel model;
  ForceProfile profile;
  std::string csv;
};

ForceRun RunForce(const FormantTrack& track, const RunConfig& config, const ForceRunOptions& options);

struct LabeledProfile {
  std::string label;
  ForceProfile profile;
};

// Reads the `t_ds,a_tense,f_tense,warning` table written by RunForce.
ForceProfile ParseForceCsv(std::string_view text);

// Simulator scenario: `key = value` lines, '#' comments.
//   accel = const:0.8 | linear:0.8,-0.2   (Bark/ds^2, t in ds)
//   z_start, zslope_start, duration_ms, frame_step_ms, m, k, seed
//   oscillator = p,y0[,y_start]          (optional)
//   noise_bark, f0_start_hz, f0_slope_hz_per_ds   (optional)
struct Scenario {
  double accel_constant = 0.0;
  double accel_slope = 0.0;
  double z_start = 0.0;
  double zslope_start = 0.0;
  double duration_ms = 0.0;
  double frame_step_ms = 0.0;
  ForceConstants constants;
  std::optional<OscillatorParams> oscillator;
  double oscillator_y_start = 0.0;
  std::uint64_t seed = 0;
  double noise_bark = 0.0;
  std::optional<double> f0_start_hz;
  double f0_slope_hz_per_ds = 0.0;

  double AccelAt(double t_ds) const { return accel_constant + accel_slope * t_ds; }
};

// Throws ParseError with the line number.
Scenario ParseScenario(std::string_view text);

struct SimulationOutput {
  FormantTrack track;
  std::vector<YSample> oscillator;  // one per frame when enabled
  std::string csv;
};

SimulationOutput RunSimulate(const Scenario& scenario);

}  // namespace vtense

#endif  // VTENSE_REPORT_H_
