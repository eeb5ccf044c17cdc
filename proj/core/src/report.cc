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

#include "vtense/report.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <numbers>
#include <set>
#include <thread>

#include <nlohmann/json.hpp>

#include "vtense/error.h"
#include "vtense/text_io.h"

namespace vtense {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kRecordColumns[] = {
    "path",       "vowel_label",  "class_label", "language", "source",   "d_ds",
    "theta1_rad", "theta_f1_rad", "f1_33_hz",    "z1_33_bark", "f0_33_hz", "f0_66_hz",
    "delta_f0_hz", "status",      "error",       "config_hash"};

std::string OneLine(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  std::replace(text.begin(), text.end(), '\r', ' ');
  return text;
}

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

Json OptionalJson(const std::optional<double>& v) {
  if (v && std::isfinite(*v)) return Json(*v);
  return Json(nullptr);
}

Json NumberJson(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string Fixed(double v, int decimals = 4) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string Short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string PValueText(double p) {
  if (p < 0.001) return "p < .001";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "p = %.4f", p);
  return buf;
}

const std::string& LabelField(const RecordRow& row, const std::string& field) {
  if (field == "source") return row.labels.source;
  if (field == "class_label") return row.labels.class_label;
  if (field == "language") return row.labels.language;
  if (field == "vowel_label") return row.labels.vowel_label;
  if (field == "path") return row.path;
  throw ConfigError("unknown record field '" + field + "'");
}

RecordRow AnalyzeEntry(const ManifestEntry& entry, const std::string& base_dir, const RunConfig& config) {
  RecordRow row;
  row.path = entry.path;
  row.labels = SegmentLabels{entry.vowel_label, entry.class_label, entry.language, entry.source};
  try {
    fs::path resolved(entry.path);
    if (resolved.is_relative() && !base_dir.empty()) resolved = fs::path(base_dir) / resolved;
    const FormantTrack track = LoadTrack(resolved.string(), config.extraction);
    const VowelSegment segment = VowelSegment::FromManifest(entry);
    TensenessRecord rec = ComputeIndicators(track, segment);
    row.deviation_index_hz = DeviationIndex(rec.f1_33_hz, config.f_neu_hz);
    try {
      const PolyModel model =
          FitPoly(track, FitWindow{segment.landmarks.t33_ms, segment.landmarks.t66_ms}, config.fit_degree);
      const ForceProfile profile = ComputeForceProfile(model, config.constants, 101);
      double sum_a = 0.0;
      double sum_f = 0.0;
      for (std::size_t i = 0; i < profile.a_tense.size(); ++i) {
        sum_a += profile.a_tense[i];
        sum_f += profile.f_tense[i];
      }
      row.a_tense_mean = sum_a / static_cast<double>(profile.a_tense.size());
      row.f_tense_mean = sum_f / static_cast<double>(profile.f_tense.size());
      row.fit_residual_rms = model.residual_rms;
      if (profile.degenerate_degree) row.fit_error = "degenerate degree: acceleration reported as 0";
    } catch (const Error& e) {
      row.fit_error = OneLine(e.what());
    }
    row.record = std::move(rec);
  } catch (const std::exception& e) {
    row.record.reset();
    row.error = OneLine(e.what());
    if (row.error.empty()) row.error = "unknown failure";
  }
  return row;
}

}  // namespace

// ---------------------------------------------------------------------------
// RunConfig

void RunConfig::Validate() const {
  if (fit_degree < kMinFitDegree || fit_degree > kMaxFitDegree) {
    throw ConfigError("fit degree must be within 1..6");
  }
  if (!(std::isfinite(f_neu_hz) && f_neu_hz > 0.0)) throw ConfigError("F_neu must be positive");
  try {
    constants.Validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  policy.Validate();
  if (workers < 1) throw ConfigError("workers must be at least 1");
  // Rate-independent extraction checks; the rest run per file.
  if (!(extraction.hop_ms > 0.0 && extraction.frame_ms > extraction.hop_ms)) {
    throw ConfigError("extraction needs frame_ms > hop_ms > 0");
  }
  if (!(extraction.f0_min_hz > 0.0 && extraction.f0_min_hz < extraction.f0_max_hz)) {
    throw ConfigError("extraction needs 0 < f0_min < f0_max");
  }
  if (!(extraction.preemphasis >= 0.0 && extraction.preemphasis < 1.0)) {
    throw ConfigError("preemphasis must lie in [0, 1)");
  }
}

std::vector<std::string> RunConfig::Describe() const {
  const ExtractionConfig& e = extraction;
  return {
      "fit_degree=" + std::to_string(fit_degree),
      "f_neu_hz=" + FormatDouble(f_neu_hz),
      "mass_m=" + FormatDouble(constants.mass_m),
      "coeff_k=" + FormatDouble(constants.coeff_k),
      "epsilon_rad=" + FormatDouble(policy.epsilon_rad),
      "alpha=" + FormatDouble(policy.alpha),
      "min_gap_rad=" + FormatDouble(policy.min_gap_rad),
      "frame_ms=" + FormatDouble(e.frame_ms),
      "hop_ms=" + FormatDouble(e.hop_ms),
      "preemphasis=" + FormatDouble(e.preemphasis),
      "lpc_order=" + (e.lpc_order ? std::to_string(*e.lpc_order) : std::string("auto")),
      "max_formant_hz=" + FormatDouble(e.max_formant_hz),
      "bandwidth_max_hz=" + FormatDouble(e.bandwidth_max_hz),
      "f0_min_hz=" + FormatDouble(e.f0_min_hz),
      "f0_max_hz=" + FormatDouble(e.f0_max_hz),
      "voicing_threshold=" + FormatDouble(e.voicing_threshold),
      "seed=" + std::to_string(seed),
  };
}

std::string RunConfig::Hash() const {
  std::string canonical;
  for (const auto& line : Describe()) canonical += line + "\n";
  return Fnv1a64Hex(canonical);
}

int RecordsTable::ErrorCount() const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const RecordRow& r) { return !r.ok(); }));
}

std::vector<std::string> RecordsTable::ConfigHashes() const {
  std::vector<std::string> out;
  std::size_t begin = 0;
  while (begin < config_hash.size()) {
    const std::size_t end = std::min(config_hash.find('+', begin), config_hash.size());
    out.push_back(config_hash.substr(begin, end - begin));
    begin = end + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Analysis

FormantTrack LoadTrack(const std::string& path, const ExtractionConfig& extraction) {
  const std::string ext = Lower(fs::path(path).extension().string());
  if (ext == ".wav") {
    const std::vector<std::uint8_t> bytes = ReadBinaryFile(path);
    FormantTrack track = ExtractTrack(ReadWav(bytes), extraction);
    track.source_id = path;
    track.Validate();
    return track;
  }
  const std::string text = ReadTextFile(path);
  if (ext == ".csv") return ParseTrackCsv(text, path);
  return ParsePraatFormant(text, path);
}

RecordsTable RunAnalyze(const CorpusManifest& manifest, const std::string& base_dir, const RunConfig& config) {
  config.Validate();
  RecordsTable table;
  table.config_hash = config.Hash();
  table.rows.resize(manifest.entries.size());
  const std::size_t n = manifest.entries.size();
  const auto workers = static_cast<std::size_t>(std::min<long>(config.workers, std::max<long>(1, static_cast<long>(n))));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) table.rows[i] = AnalyzeEntry(manifest.entries[i], base_dir, config);
    return table;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        table.rows[i] = AnalyzeEntry(manifest.entries[i], base_dir, config);
      }
    });
  }
  for (auto& t : pool) t.join();
  return table;
}

std::string RecordsToCsv(const RecordsTable& table) {
  std::string out;
  for (std::size_t c = 0; c < std::size(kRecordColumns); ++c) {
    if (c) out += ',';
    out += kRecordColumns[c];
  }
  out += '\n';
  for (const RecordRow& row : table.rows) {
    std::vector<std::string> f = {CsvField(row.path), CsvField(row.labels.vowel_label),
                                  CsvField(row.labels.class_label), CsvField(row.labels.language),
                                  CsvField(row.labels.source)};
    if (row.record) {
      const TensenessRecord& r = *row.record;
      f.insert(f.end(), {FormatDouble(r.d_ds), FormatDouble(r.theta1_rad), FormatDouble(r.theta_f1_rad),
                         FormatDouble(r.f1_33_hz), FormatDouble(r.z1_33_bark), FormatOptional(r.f0_33_hz),
                         FormatOptional(r.f0_66_hz), FormatOptional(r.delta_f0_hz), "ok", ""});
    } else {
      f.insert(f.end(), {"", "", "", "", "", "", "", "", "error", CsvField(row.error)});
    }
    f.push_back(table.config_hash);
    for (std::size_t c = 0; c < f.size(); ++c) {
      if (c) out += ',';
      out += f[c];
    }
    out += '\n';
  }
  return out;
}

std::string RecordsToJson(const RecordsTable& table, const RunConfig& config) {
  Json doc;
  doc["config_hash"] = table.config_hash;
  Json cfg = Json::object();
  for (const auto& line : config.Describe()) {
    const auto eq = line.find('=');
    cfg[line.substr(0, eq)] = line.substr(eq + 1);
  }
  doc["config"] = cfg;
  doc["error_rows"] = table.ErrorCount();
  Json rows = Json::array();
  for (const RecordRow& row : table.rows) {
    Json j;
    j["path"] = row.path;
    j["vowel_label"] = row.labels.vowel_label;
    j["class_label"] = row.labels.class_label;
    j["language"] = row.labels.language;
    j["source"] = row.labels.source;
    if (row.record) {
      const TensenessRecord& r = *row.record;
      j["status"] = "ok";
      j["d_ds"] = NumberJson(r.d_ds);
      j["theta1_rad"] = NumberJson(r.theta1_rad);
      j["theta_f1_rad"] = NumberJson(r.theta_f1_rad);
      j["f1_33_hz"] = NumberJson(r.f1_33_hz);
      j["f1_66_hz"] = NumberJson(r.f1_66_hz);
      j["z1_33_bark"] = NumberJson(r.z1_33_bark);
      j["f0_33_hz"] = OptionalJson(r.f0_33_hz);
      j["f0_66_hz"] = OptionalJson(r.f0_66_hz);
      j["delta_f0_hz"] = OptionalJson(r.delta_f0_hz);
      j["class_by_theta"] = ClassName(ClassifyTheta(r.theta1_rad, config.policy.epsilon_rad));
      j["deviation_index_hz"] = OptionalJson(row.deviation_index_hz);
      j["a_tense_mean"] = OptionalJson(row.a_tense_mean);
      j["f_tense_mean"] = OptionalJson(row.f_tense_mean);
      j["fit_residual_rms"] = OptionalJson(row.fit_residual_rms);
      if (!row.fit_error.empty()) j["fit_note"] = row.fit_error;
    } else {
      j["status"] = "error";
      j["error"] = row.error;
    }
    rows.push_back(std::move(j));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

RecordsTable ParseRecordsCsv(std::string_view text) {
  RecordsTable table;
  std::map<std::string, std::size_t> index;
  int line_no = 0;
  std::set<std::string> hashes;
  for (std::string_view line : SplitLines(text)) {
    ++line_no;
    if (Trim(line).empty() || Trim(line).front() == '#') continue;
    std::vector<std::string> fields = SplitCsvRecord(line);
    if (index.empty()) {
      for (std::size_t i = 0; i < fields.size(); ++i) index[std::string(Trim(fields[i]))] = i;
      for (const char* col : kRecordColumns) {
        if (!index.count(col)) throw ParseError(std::string("records file is missing column ") + col, line_no);
      }
      continue;
    }
    if (fields.size() < index.size()) throw ParseError("short records row", line_no);
    auto get = [&](const char* col) { return fields[index[col]]; };
    auto number = [&](const char* col) -> double {
      auto v = ParseDouble(get(col));
      if (!v) throw ParseError(std::string("malformed ") + col, line_no);
      return *v;
    };
    auto optional = [&](const char* col) -> std::optional<double> {
      if (Trim(get(col)).empty()) return std::nullopt;
      return number(col);
    };
    RecordRow row;
    row.path = get("path");
    row.labels = SegmentLabels{get("vowel_label"), get("class_label"), get("language"), get("source")};
    const std::string status = get("status");
    if (status == "ok") {
      TensenessRecord r;
      r.d_ds = number("d_ds");
      r.theta1_rad = number("theta1_rad");
      r.theta_f1_rad = number("theta_f1_rad");
      r.f1_33_hz = number("f1_33_hz");
      r.f1_66_hz = r.f1_33_hz + std::tan(r.theta_f1_rad) * r.d_ds;
      r.z1_33_bark = number("z1_33_bark");
      r.f0_33_hz = optional("f0_33_hz");
      r.f0_66_hz = optional("f0_66_hz");
      r.delta_f0_hz = optional("delta_f0_hz");
      r.labels = row.labels;
      row.record = r;
    } else if (status == "error") {
      row.error = get("error");
    } else {
      throw ParseError("unknown status '" + status + "'", line_no);
    }
    const std::string hash = get("config_hash");
    if (table.config_hash.empty()) table.config_hash = hash;
    if (hash != table.config_hash) hashes.insert(hash);
    table.rows.push_back(std::move(row));
  }
  if (index.empty()) throw ParseError("empty records file", 0);
  if (!hashes.empty()) {
    // Mixed configurations: keep the first hash, flag the rest via the table.
    for (const auto& h : hashes) table.config_hash += "+" + h;
  }
  return table;
}

// ---------------------------------------------------------------------------
// Statistics report

void ApplyGrouping(std::string_view group_by, StatsOptions& options) {
  auto canonical = [](std::string name) -> std::string {
    if (name == "class" || name == "class_label") return "class_label";
    if (name == "vowel" || name == "vowel_label") return "vowel_label";
    if (name == "source" || name == "language") return name;
    throw ConfigError("unknown grouping field '" + name + "' (use source, class, language or vowel)");
  };
  std::vector<std::string> parts;
  for (const std::string& field : SplitCsvRecord(group_by)) {
    std::string f(Trim(field));
    if (!f.empty()) parts.push_back(canonical(f));
  }
  if (parts.size() == 1) {
    options.class_field = parts[0];
  } else if (parts.size() == 2) {
    options.factor_field = parts[0];
    options.class_field = parts[1];
  } else {
    throw ConfigError("--group-by takes one or two fields, e.g. source,class");
  }
  if (options.factor_field == options.class_field) {
    throw ConfigError("--group-by fields must differ");
  }
}

StatsReport RunStats(const RecordsTable& table, const StatsOptions& options) {
  options.policy.Validate();
  const bool mixed = table.config_hash.find('+') != std::string::npos;

  // Groups in order of first appearance.
  std::vector<std::string> classes;
  std::map<std::string, std::vector<const RecordRow*>> by_class;
  int usable = 0;
  for (const RecordRow& row : table.rows) {
    if (!row.ok()) continue;
    ++usable;
    const std::string& label = LabelField(row, options.class_field);
    if (!by_class.count(label)) classes.push_back(label);
    by_class[label].push_back(&row);
  }
  if (usable == 0) throw InsufficientDataError("no usable records (all rows are error rows)");

  auto column = [&](const std::string& label, auto member) {
    std::vector<double> v;
    for (const RecordRow* r : by_class[label]) v.push_back(member(*r->record));
    return v;
  };
  auto theta = [](const TensenessRecord& r) { return r.theta1_rad; };
  auto f1 = [](const TensenessRecord& r) { return r.f1_33_hz; };

  Json doc;
  doc["config_hash"] = table.config_hash;
  doc["mixed_config_hashes"] = mixed;
  doc["settings"] = {{"class_field", options.class_field},
                     {"factor_field", options.factor_field},
                     {"quantiles", options.quantiles == QuantileMethod::kType7 ? "type7" : "type6"},
                     {"anova_sums_of_squares", "type2"},
                     {"alpha", options.policy.alpha},
                     {"min_gap_rad", options.policy.min_gap_rad},
                     {"epsilon_rad", options.policy.epsilon_rad}};
  doc["rows"] = {{"total", table.rows.size()}, {"usable", usable}, {"error", table.ErrorCount()}};

  std::string text;
  text += "# vtense stats\n";
  text += "# config_hash=" + table.config_hash + "\n";
  if (mixed) text += "# WARNING: records come from more than one configuration\n";
  text += "# rows: " + std::to_string(table.rows.size()) + " total, " + std::to_string(usable) +
          " usable, " + std::to_string(table.ErrorCount()) + " error\n\n";

  // Six-number summaries.
  text += "theta1_rad by " + options.class_field + "\n";
  char line[256];
  std::snprintf(line, sizeof(line), "%-12s %9s %9s %9s %9s %9s %9s %5s\n", "Vowels", "Min.", "1st Qu.",
                "Median", "Mean", "3rd Qu.", "Max.", "n");
  text += line;
  Json summaries = Json::array();
  for (const std::string& label : classes) {
    const std::vector<double> v = column(label, theta);
    const SixNumberSummary s = Summarize(v, options.quantiles);
    std::snprintf(line, sizeof(line), "%-12s %9.4f %9.4f %9.4f %9.4f %9.4f %9.4f %5d\n", label.c_str(), s.min,
                  s.q1, s.median, s.mean, s.q3, s.max, s.count);
    text += line;
    summaries.push_back({{"group", label},
                         {"n", s.count},
                         {"min", s.min},
                         {"q1", s.q1},
                         {"median", s.median},
                         {"mean", s.mean},
                         {"q3", s.q3},
                         {"max", s.max}});
  }
  doc["theta1_summary"] = summaries;
  text += "\n";

  auto test_json = [](const TestResult& t) {
    Json j = {{"kind", t.kind}, {"statistic", NumberJson(t.statistic)}, {"df", NumberJson(t.df)}};
    if (t.df_denominator) j["df_denominator"] = *t.df_denominator;
    j["p_value"] = NumberJson(t.p_value);
    return j;
  };

  // Welch tests between class pairs.
  Json welch = Json::array();
  text += "Welch t-tests\n";
  if (classes.size() < 2) {
    text += "  not applicable: fewer than 2 groups\n";
  }
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (std::size_t j = i + 1; j < classes.size(); ++j) {
      for (const auto& [measure, getter] :
           std::vector<std::pair<std::string, double (*)(const TensenessRecord&)>>{{"theta1_rad", +theta},
                                                                                 {"f1_33_hz", +f1}}) {
        Json entry = {{"measure", measure}, {"group_a", classes[i]}, {"group_b", classes[j]}};
        try {
          const TestResult t = WelchT(column(classes[i], getter), column(classes[j], getter));
          entry["status"] = "ok";
          entry["test"] = test_json(t);
          text += "  " + measure + " " + classes[i] + " vs " + classes[j] + ": t(" + Fixed(t.df, 2) +
                  ") = " + Fixed(t.statistic) + ", " + PValueText(t.p_value) + "\n";
        } catch (const Error& e) {
          entry["status"] = "error";
          entry["reason"] = e.what();
          text += "  " + measure + " " + classes[i] + " vs " + classes[j] + ": error: " + e.what() + "\n";
        }
        welch.push_back(entry);
      }
    }
  }
  doc["welch"] = welch;
  text += "\n";

  // Relative classification of the pair.
  text += "Pair classification (alpha=" + Short(options.policy.alpha) +
          ", min_gap=" + Short(options.policy.min_gap_rad) + " rad, epsilon=" + Short(options.policy.epsilon_rad) +
          " rad)\n";
  if (classes.size() == 2) {
    Json pair = {{"group_a", classes[0]}, {"group_b", classes[1]}};
    try {
      const PairVerdict v = ClassifyPair(column(classes[0], theta), column(classes[1], theta), options.policy);
      pair["status"] = "ok";
      pair["label_a"] = ClassName(v.label_a);
      pair["label_b"] = ClassName(v.label_b);
      pair["bifurcated"] = v.bifurcated;
      pair["median_a"] = v.evidence.median_a;
      pair["median_b"] = v.evidence.median_b;
      pair["median_gap"] = v.evidence.median_gap;
      pair["welch_t"] = NumberJson(v.evidence.welch_t);
      pair["welch_p"] = v.evidence.welch_p;
      text += "  " + classes[0] + " -> " + ClassName(v.label_a) + ", " + classes[1] + " -> " +
              ClassName(v.label_b) + (v.bifurcated ? " (bifurcated)" : " (not bifurcated)") + "\n";
    } catch (const Error& e) {
      pair["status"] = "error";
      pair["reason"] = e.what();
      text += "  error: " + std::string(e.what()) + "\n";
    }
    doc["pair"] = pair;
  } else {
    doc["pair"] = {{"status", "not_applicable"}, {"reason", "needs exactly 2 groups"}};
    text += "  not applicable: needs exactly 2 groups\n";
  }
  text += "\n";

  // Two-way ANOVA (factor x class).
  std::vector<AnovaObservation> obs;
  std::set<std::string> factor_levels;
  for (const RecordRow& row : table.rows) {
    if (!row.ok()) continue;
    obs.push_back({LabelField(row, options.factor_field), LabelField(row, options.class_field), row.record->theta1_rad});
    factor_levels.insert(obs.back().factor_a);
  }
  text += "Two-way ANOVA on theta1_rad (" + options.factor_field + " x " + options.class_field +
          ", Type II SS)\n";
  if (factor_levels.size() < 2 || classes.size() < 2) {
    doc["anova"] = {{"status", "not_applicable"},
                    {"reason", "needs at least 2 levels of " + options.factor_field + " and of " +
                                   options.class_field}};
    text += "  not applicable: needs at least 2 levels of each factor\n";
  } else {
    Json anova;
    try {
      bool interaction = true;
      AnovaTable t;
      try {
        t = Anova2(obs, true);
      } catch (const ConfigError&) {
        interaction = false;
        t = Anova2(obs, false);
      }
      anova["status"] = "ok";
      anova["interaction_included"] = interaction;
      Json effects = Json::array();
      auto add = [&](const AnovaEffect& e, const std::string& name) {
        effects.push_back({{"effect", name}, {"sum_squares", e.sum_squares}, {"test", test_json(e.test)}});
        text += "  " + name + ": F(" + Fixed(e.test.df, 0) + ", " + Fixed(*e.test.df_denominator, 0) +
                ") = " + Fixed(e.test.statistic) + ", " + PValueText(e.test.p_value) + "\n";
      };
      add(t.a, options.factor_field);
      add(t.b, options.class_field);
      if (t.interaction) add(*t.interaction, options.factor_field + ":" + options.class_field);
      if (!interaction) text += "  (empty cells: main effects only)\n";
      anova["effects"] = effects;
      anova["residual_sum_squares"] = t.residual_sum_squares;
      anova["residual_df"] = t.residual_df;
    } catch (const Error& e) {
      anova["status"] = "error";
      anova["reason"] = e.what();
      text += "  error: " + std::string(e.what()) + "\n";
    }
    doc["anova"] = anova;
  }
  text += "\n";

  // Pearson theta1 vs delta F0.
  std::vector<double> xs;
  std::vector<double> ys;
  for (const RecordRow& row : table.rows) {
    if (row.ok() && row.record->delta_f0_hz) {
      xs.push_back(row.record->theta1_rad);
      ys.push_back(*row.record->delta_f0_hz);
    }
  }
  text += "Pearson correlation theta1_rad vs delta_f0_hz\n";
  if (xs.size() < 3) {
    doc["correlation"] = {{"status", "not_applicable"}, {"reason", "fewer than 3 records with F0 at both landmarks"}};
    text += "  not applicable: fewer than 3 records with F0 at both landmarks\n";
  } else {
    Json corr;
    try {
      const PearsonResult p = Pearson(xs, ys);
      corr = {{"status", "ok"}, {"n", xs.size()}, {"r", p.r}, {"test", test_json(p.test)}};
      text += "  r = " + Fixed(p.r) + " (n = " + std::to_string(xs.size()) + "), t(" + Fixed(p.test.df, 0) +
              ") = " + Fixed(p.test.statistic) + ", " + PValueText(p.test.p_value) + "\n";
    } catch (const Error& e) {
      corr = {{"status", "error"}, {"reason", e.what()}};
      text += "  error: " + std::string(e.what()) + "\n";
    }
    doc["correlation"] = corr;
  }

  return StatsReport{text, doc.dump(2) + "\n"};
}

// ---------------------------------------------------------------------------
// Force profiles

ForceRun RunForce(const FormantTrack& track, const RunConfig& config, const ForceRunOptions& options) {
  config.constants.Validate();
  ForceRun run;
  const FitWindow window = options.window.value_or(FitWindow{track.start_ms(), track.end_ms()});
  run.model = FitPoly(track, window, options.degree);
  run.profile = ComputeForceProfile(run.model, config.constants, options.n_samples);

  std::string coeffs;
  for (std::size_t i = 0; i < run.model.coefficients.size(); ++i) {
    if (i) coeffs += ';';
    coeffs += FormatDouble(run.model.coefficients[i]);
  }
  std::string& out = run.csv;
  out += "# vtense force profile\n";
  out += "# config_hash=" + config.Hash() + "\n";
  out += "# mass_m=" + FormatDouble(config.constants.mass_m) + "\n";
  out += "# coeff_k=" + FormatDouble(config.constants.coeff_k) + "\n";
  out += "# degree=" + std::to_string(options.degree) + "\n";
  out += "# window_ms=" + FormatDouble(window.start_ms) + "," + FormatDouble(window.end_ms) + "\n";
  out += "# coefficients=" + coeffs + "\n";
  out += "# residual_rms=" + FormatDouble(run.model.residual_rms) + "\n";
  out += "t_ds,a_tense,f_tense,warning\n";
  const char* warning = run.profile.degenerate_degree ? "degenerate_degree" : "";
  for (std::size_t i = 0; i < run.profile.times_ds.size(); ++i) {
    out += FormatDouble(run.profile.times_ds[i]) + "," + FormatDouble(run.profile.a_tense[i]) + "," +
           FormatDouble(run.profile.f_tense[i]) + "," + warning + "\n";
  }
  return run;
}

ForceProfile ParseForceCsv(std::string_view text) {
  ForceProfile profile;
  bool header = false;
  int line_no = 0;
  for (std::string_view raw : SplitLines(text)) {
    ++line_no;
    std::string_view line = Trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      line.remove_prefix(1);
      line = Trim(line);
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) continue;
      const std::string_view key = line.substr(0, eq);
      auto value = ParseDouble(line.substr(eq + 1));
      if (key == "mass_m" && value) profile.constants.mass_m = *value;
      if (key == "coeff_k" && value) profile.constants.coeff_k = *value;
      continue;
    }
    std::vector<std::string> f = SplitCsvRecord(line);
    if (!header) {
      if (f.size() < 3 || f[0] != "t_ds" || f[1] != "a_tense" || f[2] != "f_tense") {
        throw ParseError("expected header t_ds,a_tense,f_tense,warning", line_no);
      }
      header = true;
      continue;
    }
    if (f.size() < 3) throw ParseError("short force row", line_no);
    auto t = ParseDouble(f[0]);
    auto a = ParseDouble(f[1]);
    auto force = ParseDouble(f[2]);
    if (!t || !a || !force) throw ParseError("malformed number in force row", line_no);
    profile.times_ds.push_back(*t);
    profile.a_tense.push_back(*a);
    profile.f_tense.push_back(*force);
    if (f.size() > 3 && Trim(f[3]) == "degenerate_degree") profile.degenerate_degree = true;
  }
  if (profile.times_ds.size() < 2) throw ParseError("force profile needs at least 2 rows", 0);
  return profile;
}

// ---------------------------------------------------------------------------
// Scenarios

Scenario ParseScenario(std::string_view text) {
  Scenario s;
  bool have_accel = false;
  bool have_z = false;
  bool have_duration = false;
  bool have_step = false;
  int line_no = 0;
  for (std::string_view raw : SplitLines(text)) {
    ++line_no;
    std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key = value", line_no);
    const std::string key(Trim(line.substr(0, eq)));
    const std::string value(Trim(line.substr(eq + 1)));
    auto number = [&](std::string_view v) {
      auto d = ParseDouble(v);
      if (!d || !std::isfinite(*d)) throw ParseError("malformed number for " + key + ": '" + std::string(v) + "'", line_no);
      return *d;
    };
    auto list = [&](std::string_view v) {
      std::vector<double> out;
      for (const std::string& part : SplitCsvRecord(v)) out.push_back(number(part));
      return out;
    };
    if (key == "accel") {
      if (value.rfind("const:", 0) == 0) {
        s.accel_constant = number(std::string_view(value).substr(6));
        s.accel_slope = 0.0;
      } else if (value.rfind("linear:", 0) == 0) {
        const auto v = list(std::string_view(value).substr(7));
        if (v.size() != 2) throw ParseError("accel linear needs two numbers: linear:alpha,beta", line_no);
        s.accel_constant = v[0];
        s.accel_slope = v[1];
      } else {
        throw ParseError("accel must be const:alpha or linear:alpha,beta", line_no);
      }
      have_accel = true;
    } else if (key == "z_start") {
      s.z_start = number(value);
      have_z = true;
    } else if (key == "zslope_start") {
      s.zslope_start = number(value);
    } else if (key == "duration_ms") {
      s.duration_ms = number(value);
      have_duration = true;
    } else if (key == "frame_step_ms") {
      s.frame_step_ms = number(value);
      have_step = true;
    } else if (key == "m") {
      s.constants.mass_m = number(value);
    } else if (key == "k") {
      s.constants.coeff_k = number(value);
    } else if (key == "oscillator") {
      const auto v = list(value);
      if (v.size() != 2 && v.size() != 3) throw ParseError("oscillator = p,y0[,y_start]", line_no);
      s.oscillator = OscillatorParams{v[0], v[1]};
      s.oscillator_y_start = v.size() == 3 ? v[2] : v[1] + 1.0;
    } else if (key == "seed") {
      const double d = number(value);
      if (d < 0 || d != std::floor(d)) throw ParseError("seed must be a non-negative integer", line_no);
      s.seed = static_cast<std::uint64_t>(d);
    } else if (key == "noise_bark") {
      s.noise_bark = number(value);
      if (s.noise_bark < 0.0) throw ParseError("noise_bark must be non-negative", line_no);
    } else if (key == "f0_start_hz") {
      s.f0_start_hz = number(value);
    } else if (key == "f0_slope_hz_per_ds") {
      s.f0_slope_hz_per_ds = number(value);
    } else {
      throw ParseError("unknown scenario key '" + key + "'", line_no);
    }
  }
  if (!have_accel) throw ParseError("scenario is missing accel", 0);
  if (!have_z) throw ParseError("scenario is missing z_start", 0);
  if (!have_duration) throw ParseError("scenario is missing duration_ms", 0);
  if (!have_step) throw ParseError("scenario is missing frame_step_ms", 0);
  if (!(s.duration_ms > 0.0) || !(s.frame_step_ms > 0.0)) {
    throw ParseError("duration_ms and frame_step_ms must be positive", 0);
  }
  try {
    s.constants.Validate();
  } catch (const DomainError& e) {
    throw ParseError(e.what(), 0);
  }
  if (s.oscillator && !(s.oscillator->spring_p > 0.0)) throw ParseError("oscillator p must be positive", 0);
  return s;
}

SimulationOutput RunSimulate(const Scenario& s) {
  constexpr int kSubsteps = 20;
  SynthOptions options;
  options.noise_sigma_bark = s.noise_bark;
  options.seed = s.seed;
  options.f0_start_hz = s.f0_start_hz;
  options.f0_slope_hz_per_ds = s.f0_slope_hz_per_ds;
  options.substeps = kSubsteps;

  SimulationOutput out;
  out.track = SynthTrack([&s](double t) { return s.AccelAt(t); }, s.z_start, s.zslope_start, s.duration_ms,
                         s.frame_step_ms, options);
  out.track.source_id = "simulate";

  std::vector<std::string> echo = {
      "accel=" + (s.accel_slope == 0.0 ? "const:" + FormatDouble(s.accel_constant)
                                       : "linear:" + FormatDouble(s.accel_constant) + "," + FormatDouble(s.accel_slope)),
      "z_start=" + FormatDouble(s.z_start),
      "zslope_start=" + FormatDouble(s.zslope_start),
      "duration_ms=" + FormatDouble(s.duration_ms),
      "frame_step_ms=" + FormatDouble(s.frame_step_ms),
      "m=" + FormatDouble(s.constants.mass_m),
      "k=" + FormatDouble(s.constants.coeff_k),
      "seed=" + std::to_string(s.seed),
      "noise_bark=" + FormatDouble(s.noise_bark),
  };
  if (s.f0_start_hz) {
    echo.push_back("f0_start_hz=" + FormatDouble(*s.f0_start_hz));
    echo.push_back("f0_slope_hz_per_ds=" + FormatDouble(s.f0_slope_hz_per_ds));
  }
  if (s.oscillator) {
    echo.push_back("oscillator=" + FormatDouble(s.oscillator->spring_p) + "," +
                   FormatDouble(s.oscillator->equilibrium_y0) + "," + FormatDouble(s.oscillator_y_start));
  }
  std::string canonical;
  for (const auto& e : echo) canonical += e + "\n";

  std::vector<std::string> comments = {"vtense simulated track", "config_hash=" + Fnv1a64Hex(canonical)};
  comments.insert(comments.end(), echo.begin(), echo.end());
  comments.push_back("f_tense_at_start=" + FormatDouble(FTense(s.constants, s.AccelAt(0.0))));

  if (!s.oscillator) {
    out.csv = SerializeTrackCsv(out.track, comments);
    return out;
  }

  const std::size_t frames = out.track.frames.size();
  const double frame_step_ds = s.frame_step_ms / kMsPerDecisecond;
  SimState init;
  init.y = s.oscillator_y_start;
  const auto path = SimulateYOscillator(*s.oscillator, s.constants.mass_m, init,
                                        static_cast<double>(frames - 1) * frame_step_ds, frame_step_ds / kSubsteps);
  for (std::size_t k = 0; k < frames; ++k) out.oscillator.push_back(path[k * kSubsteps]);
  comments.push_back("expected_period_ds=" +
                     FormatDouble(2.0 * std::numbers::pi * std::sqrt(s.constants.mass_m / s.oscillator->spring_p)));

  std::string& csv = out.csv;
  for (const auto& c : comments) csv += "# " + c + "\n";
  csv += "time_ms,f1_hz,f2_hz,f3_hz,f0_hz,y,vy\n";
  for (std::size_t k = 0; k < frames; ++k) {
    const FormantFrame& f = out.track.frames[k];
    csv += FormatDouble(f.time_ms) + "," + FormatOptional(f.f1_hz) + "," + FormatOptional(f.f2_hz) + "," +
           FormatOptional(f.f3_hz) + "," + FormatOptional(f.f0_hz) + "," + FormatDouble(out.oscillator[k].y) + "," +
           FormatDouble(out.oscillator[k].vy) + "\n";
  }
  return out;
}

}  // namespace vtense
