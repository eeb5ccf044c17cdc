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

// vtense: command line front end for the tenseness toolkit.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 total input
// failure, 3 partial failure (some error rows).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vtense/error.h"
#include "vtense/formant_extract.h"
#include "vtense/ingest.h"
#include "vtense/report.h"
#include "vtense/scales.h"
#include "vtense/svg.h"
#include "vtense/text_io.h"

namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kInputFailure = 2, kPartial = 3 };

void WriteFileOrThrow(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw vtense::Error("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw vtense::Error("failed writing '" + path.string() + "'");
}

// stdout when `path` is empty or "-".
void Emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    WriteFileOrThrow(path, content);
  }
}

std::optional<vtense::FitWindow> ParseWindow(const std::string& text) {
  const auto parts = vtense::SplitCsvRecord(text);
  if (parts.size() != 2) throw vtense::ConfigError("--window takes two numbers: start_ms,end_ms");
  const auto a = vtense::ParseDouble(parts[0]);
  const auto b = vtense::ParseDouble(parts[1]);
  if (!a || !b || !(*a < *b)) throw vtense::ConfigError("--window needs start_ms < end_ms");
  return vtense::FitWindow{*a, *b};
}

struct ExtractionFlags {
  double frame_ms = 25.0;
  double hop_ms = 10.0;
  int lpc_order = 0;
  double max_formant_hz = 5500.0;

  void Add(CLI::App* app) {
    app->add_option("--frame-ms", frame_ms, "analysis frame length")->capture_default_str();
    app->add_option("--hop-ms", hop_ms, "frame hop")->capture_default_str();
    app->add_option("--lpc-order", lpc_order, "LPC order (0 = 2 + fs/1000)")->capture_default_str();
    app->add_option("--max-formant", max_formant_hz, "formant ceiling in Hz")->capture_default_str();
  }
  vtense::ExtractionConfig Config() const {
    vtense::ExtractionConfig c;
    c.frame_ms = frame_ms;
    c.hop_ms = hop_ms;
    if (lpc_order > 0) c.lpc_order = lpc_order;
    c.max_formant_hz = max_formant_hz;
    return c;
  }
};

int RunBark(const std::vector<std::string>& values, bool inverse) {
  for (const std::string& v : values) {
    const auto x = vtense::ParseDouble(v);
    if (!x) throw vtense::ConfigError("not a number: '" + v + "'");
    const double y = inverse ? vtense::BarkToHz(*x) : vtense::HzToBark(*x);
    std::cout << vtense::FormatDouble(*x) << '\t' << vtense::FormatDouble(y) << '\n';
  }
  return kOk;
}

int RunExtract(const std::string& wav, const std::string& out, const ExtractionFlags& flags) {
  const vtense::ExtractionConfig config = flags.Config();
  vtense::AudioBuffer audio;
  try {
    audio = vtense::ReadWav(vtense::ReadBinaryFile(wav));
  } catch (const vtense::Error& e) {
    std::cerr << "vtense extract: " << e.what() << '\n';
    return kInputFailure;
  }
  const vtense::FormantTrack track = vtense::ExtractTrack(audio, config);
  std::vector<std::string> comments = {"vtense extract " + fs::path(wav).filename().string()};
  for (const auto& line : config.Describe(audio.sample_rate_hz)) comments.push_back(line);
  Emit(out, vtense::SerializeTrackCsv(track, comments));
  return kOk;
}

int RunAnalyzeCommand(const std::string& manifest_path, const vtense::RunConfig& config,
                      const std::string& classes) {
  config.Validate();
  vtense::CorpusManifest manifest;
  try {
    vtense::ManifestOptions options;
    if (!classes.empty()) {
      std::vector<std::string> declared;
      for (const auto& c : vtense::SplitCsvRecord(classes)) declared.emplace_back(vtense::Trim(c));
      options.declared_classes = declared;
    }
    manifest = vtense::ParseManifest(vtense::ReadTextFile(manifest_path), options);
  } catch (const vtense::Error& e) {
    std::cerr << "vtense analyze: cannot use manifest: " << e.what() << '\n';
    return kInputFailure;
  }
  const std::string base = fs::path(manifest_path).parent_path().string();
  const vtense::RecordsTable table = vtense::RunAnalyze(manifest, base, config);
  const fs::path dir(config.output_dir);
  WriteFileOrThrow(dir / "records.csv", vtense::RecordsToCsv(table));
  WriteFileOrThrow(dir / "records.json", vtense::RecordsToJson(table, config));
  const int errors = table.ErrorCount();
  std::cerr << "vtense analyze: " << table.rows.size() << " rows, " << errors << " error rows, config "
            << table.config_hash << '\n';
  for (const auto& row : table.rows) {
    if (!row.ok()) std::cerr << "  error: " << row.path << ": " << row.error << '\n';
  }
  if (table.rows.empty()) return kInputFailure;
  if (errors == static_cast<int>(table.rows.size())) return kInputFailure;
  return errors > 0 ? kPartial : kOk;
}

int RunFit(const std::string& track_path, const std::string& window_text, int degree) {
  const vtense::FormantTrack track = vtense::ParseTrackCsv(vtense::ReadTextFile(track_path), track_path);
  const vtense::FitWindow window = *ParseWindow(window_text);
  const vtense::PolyModel model = vtense::FitPoly(track, window, degree);
  std::string out;
  out += "degree=" + std::to_string(model.degree) + "\n";
  out += "window_ms=" + vtense::FormatDouble(window.start_ms) + "," + vtense::FormatDouble(window.end_ms) + "\n";
  out += "samples=" + std::to_string(model.sample_count) + "\n";
  for (std::size_t i = 0; i < model.coefficients.size(); ++i) {
    out += "c" + std::to_string(i) + "=" + vtense::FormatDouble(model.coefficients[i]) + "\n";
  }
  out += "residual_rms_bark=" + vtense::FormatDouble(model.residual_rms) + "\n";
  const double len = window.length_ds();
  for (const auto& [name, t] : {std::pair{"start", 0.0}, {"mid", len / 2}, {"end", len}}) {
    const vtense::Acceleration a = vtense::ATense(model, t);
    out += std::string("a_tense_") + name + "=" + vtense::FormatDouble(a.value) + "\n";
    out += std::string("theta_") + name + "=" + vtense::FormatDouble(vtense::InstantaneousTheta(model, t)) + "\n";
  }
  std::cout << out;
  return kOk;
}

int RunStatsCommand(const std::string& records_path, vtense::StatsOptions options, const std::string& group_by,
                    const std::string& out_dir) {
  if (!group_by.empty()) vtense::ApplyGrouping(group_by, options);
  options.policy.Validate();
  vtense::RecordsTable table;
  try {
    table = vtense::ParseRecordsCsv(vtense::ReadTextFile(records_path));
  } catch (const vtense::Error& e) {
    std::cerr << "vtense stats: " << e.what() << '\n';
    return kInputFailure;
  }
  vtense::StatsReport report;
  try {
    report = vtense::RunStats(table, options);
  } catch (const vtense::InsufficientDataError& e) {
    std::cerr << "vtense stats: " << e.what() << '\n';
    return kInputFailure;
  }
  std::cout << report.text;
  if (!out_dir.empty()) {
    WriteFileOrThrow(fs::path(out_dir) / "stats.txt", report.text);
    WriteFileOrThrow(fs::path(out_dir) / "stats.json", report.json);
  }
  return table.ErrorCount() > 0 ? kPartial : kOk;
}

int RunReport(const std::vector<std::string>& inputs, const std::string& kind_name, const std::string& out,
              const std::string& class_field) {
  const auto kind = vtense::ParseSvgKind(kind_name);
  if (!kind) throw vtense::ConfigError("unknown --kind '" + kind_name + "'");
  std::string svg;
  if (*kind == vtense::SvgKind::kCurves) {
    std::vector<vtense::LabeledProfile> profiles;
    for (const std::string& path : inputs) {
      try {
        profiles.push_back({fs::path(path).stem().string(), vtense::ParseForceCsv(vtense::ReadTextFile(path))});
      } catch (const vtense::Error& e) {
        std::cerr << "vtense report: " << path << ": " << e.what() << '\n';
        return kInputFailure;
      }
    }
    svg = vtense::EmitCurvesSvg(profiles);
  } else {
    if (inputs.size() != 1) throw vtense::ConfigError("record charts take exactly one records.csv");
    vtense::RecordsTable table;
    try {
      table = vtense::ParseRecordsCsv(vtense::ReadTextFile(inputs[0]));
    } catch (const vtense::Error& e) {
      std::cerr << "vtense report: " << e.what() << '\n';
      return kInputFailure;
    }
    try {
      svg = vtense::EmitRecordsSvg(table, *kind, class_field);
    } catch (const vtense::InsufficientDataError& e) {
      std::cerr << "vtense report: " << e.what() << '\n';
      return kInputFailure;
    }
  }
  Emit(out, svg);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vtense: vowel tenseness analysis from formant trajectories"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "vtense 0.1.0");

  // bark
  std::vector<std::string> bark_values;
  bool bark_inverse = false;
  auto* bark = app.add_subcommand("bark", "convert Hz to Bark (or back with --inverse)");
  bark->add_option("values", bark_values, "frequencies")->required();
  bark->add_flag("--inverse", bark_inverse, "convert Bark to Hz");

  // extract
  std::string extract_wav;
  std::string extract_out;
  ExtractionFlags extract_flags;
  auto* extract = app.add_subcommand("extract", "LPC formant and F0 tracking of a PCM WAV file");
  extract->add_option("wav", extract_wav, "16-bit mono WAV")->required();
  extract->add_option("--out", extract_out, "track CSV (default stdout)");
  extract_flags.Add(extract);

  // analyze
  vtense::RunConfig run;
  std::string manifest_path;
  std::string classes;
  ExtractionFlags analyze_flags;
  auto* analyze = app.add_subcommand("analyze", "tenseness indicators for every manifest entry");
  analyze->add_option("manifest", manifest_path, "manifest CSV")->required();
  analyze->add_option("--degree", run.fit_degree, "polynomial degree for a_tense")->capture_default_str();
  analyze->add_option("--fneu", run.f_neu_hz, "neutral F1 in Hz")->capture_default_str();
  analyze->add_option("--mass", run.constants.mass_m, "mass m")->capture_default_str();
  analyze->add_option("--k", run.constants.coeff_k, "Bark-to-displacement constant k")->capture_default_str();
  analyze->add_option("--out-dir", run.output_dir, "directory for records.csv and records.json")
      ->capture_default_str();
  analyze->add_option("--workers", run.workers, "worker threads")->capture_default_str();
  analyze->add_option("--classes", classes, "declared class labels, comma separated");
  analyze_flags.Add(analyze);

  // fit
  std::string fit_track;
  std::string fit_window;
  int fit_degree = 3;
  auto* fit = app.add_subcommand("fit", "polynomial fit of Bark F1 over a window");
  fit->add_option("track", fit_track, "track CSV")->required();
  fit->add_option("--window", fit_window, "start_ms,end_ms")->required();
  fit->add_option("--degree", fit_degree, "polynomial degree")->capture_default_str();

  // force
  std::string force_track;
  std::string force_window;
  std::string force_out;
  vtense::RunConfig force_config;
  vtense::ForceRunOptions force_options;
  auto* force = app.add_subcommand("force", "acceleration and force of tenseness profile");
  force->add_option("track", force_track, "track CSV")->required();
  force->add_option("--mass", force_config.constants.mass_m, "mass m")->capture_default_str();
  force->add_option("--k", force_config.constants.coeff_k, "constant k")->capture_default_str();
  force->add_option("--samples", force_options.n_samples, "grid points")->capture_default_str();
  force->add_option("--degree", force_options.degree, "polynomial degree")->capture_default_str();
  force->add_option("--window", force_window, "start_ms,end_ms (default whole track)");
  force->add_option("--out", force_out, "force CSV (default stdout)");

  // simulate
  std::string scenario_path;
  std::string simulate_out;
  auto* simulate = app.add_subcommand("simulate", "synthesize a track from a scenario file");
  simulate->add_option("scenario", scenario_path, "scenario file")->required();
  simulate->add_option("--out", simulate_out, "track CSV (default stdout)");

  // stats
  std::string stats_records;
  std::string group_by;
  std::string stats_out_dir;
  vtense::StatsOptions stats_options;
  auto* stats = app.add_subcommand("stats", "summaries and tests over a records table");
  stats->add_option("records", stats_records, "records.csv")->required();
  stats->add_option("--group-by", group_by, "factor,class fields (e.g. source,class)");
  stats->add_option("--alpha", stats_options.policy.alpha, "significance level")->capture_default_str();
  stats->add_option("--min-gap", stats_options.policy.min_gap_rad, "minimum median gap")->capture_default_str();
  stats->add_option("--epsilon", stats_options.policy.epsilon_rad, "stable band half-width")
      ->capture_default_str();
  stats->add_option("--out-dir", stats_out_dir, "also write stats.txt and stats.json here");

  // report
  std::vector<std::string> report_inputs;
  std::string report_kind;
  std::string report_out;
  std::string report_class = "class";
  auto* report = app.add_subcommand("report", "SVG feature map");
  report->add_option("inputs", report_inputs, "records.csv, or force CSVs for curves")->required();
  report->add_option("--kind", report_kind, "strip1d|scatter2d_f1|scatter2d_df0|curves")->required();
  report->add_option("--out", report_out, "SVG file (default stdout)");
  report->add_option("--group-by", report_class, "record field for groups")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*bark) return RunBark(bark_values, bark_inverse);
    if (*extract) return RunExtract(extract_wav, extract_out, extract_flags);
    if (*analyze) {
      run.extraction = analyze_flags.Config();
      return RunAnalyzeCommand(manifest_path, run, classes);
    }
    if (*fit) return RunFit(fit_track, fit_window, fit_degree);
    if (*force) {
      if (!force_window.empty()) force_options.window = ParseWindow(force_window);
      force_config.constants.Validate();
      vtense::FormantTrack track;
      try {
        track = vtense::ParseTrackCsv(vtense::ReadTextFile(force_track), force_track);
      } catch (const vtense::Error& e) {
        std::cerr << "vtense force: " << e.what() << '\n';
        return kInputFailure;
      }
      const vtense::ForceRun result = vtense::RunForce(track, force_config, force_options);
      if (result.profile.degenerate_degree) std::cerr << "vtense force: warning: degree < 2, a_tense is 0\n";
      Emit(force_out, result.csv);
      return kOk;
    }
    if (*simulate) {
      vtense::Scenario scenario;
      try {
        scenario = vtense::ParseScenario(vtense::ReadTextFile(scenario_path));
      } catch (const vtense::Error& e) {
        std::cerr << "vtense simulate: " << scenario_path << ": " << e.what() << '\n';
        return kInputFailure;
      }
      Emit(simulate_out, vtense::RunSimulate(scenario).csv);
      return kOk;
    }
    if (*stats) return RunStatsCommand(stats_records, stats_options, group_by, stats_out_dir);
    if (*report) {
      std::string field = report_class;
      if (field == "class") field = "class_label";
      if (field == "vowel") field = "vowel_label";
      return RunReport(report_inputs, report_kind, report_out, field);
    }
  } catch (const vtense::ConfigError& e) {
    std::cerr << "vtense: configuration error: " << e.what() << '\n';
    return kUsage;
  } catch (const vtense::DomainError& e) {
    std::cerr << "vtense: invalid argument: " << e.what() << '\n';
    return kUsage;
  } catch (const vtense::SimulationError& e) {
    std::cerr << "vtense: simulation aborted at t = " << vtense::FormatDouble(e.t_ds()) << " ds: " << e.what()
              << '\n';
    return kInputFailure;
  } catch (const std::exception& e) {
    std::cerr << "vtense: " << e.what() << '\n';
    return kInputFailure;
  }
  return kUsage;
}
