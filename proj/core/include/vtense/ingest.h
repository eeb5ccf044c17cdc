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

// Canonical in-memory types for formant tracks, audio and corpus manifests,
// together with the parsers that produce them.

#ifndef VTENSE_INGEST_H_
#define VTENSE_INGEST_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vtense {

enum class Channel { kF1, kF2, kF3, kF0 };

// Maps formant number n (1..3) to its channel. Throws DomainError otherwise.
Channel FormantChannel(int n);
const char* ChannelName(Channel channel);

struct FormantFrame {
  double time_ms = 0.0;
  std::optional<double> f1_hz;
  std::optional<double> f2_hz;
  std::optional<double> f3_hz;
  std::optional<double> f0_hz;

  const std::optional<double>& Get(Channel channel) const;
  std::optional<double>& Get(Channel channel);

  friend bool operator==(const FormantFrame&, const FormantFrame&) = default;
};

// Ordered frames with strictly increasing times. A validated track has at
// least two frames and every present frequency is positive and finite.
struct FormantTrack {
  std::vector<FormantFrame> frames;
  std::string source_id;

  double start_ms() const { return frames.front().time_ms; }
  double end_ms() const { return frames.back().time_ms; }

  // Throws ParseError naming the offending frame (1-based) on violation.
  void Validate() const;

  friend bool operator==(const FormantTrack&, const FormantTrack&) = default;
};

struct AudioBuffer {
  std::vector<double> samples;  // mono, in [-1, 1]
  int sample_rate_hz = 0;

  double duration_ms() const {
    return 1000.0 * static_cast<double>(samples.size()) / sample_rate_hz;
  }
};

struct ManifestEntry {
  std::string path;
  std::string vowel_label;
  std::string class_label;
  std::string language;
  std::string source;
  double onset_ms = 0.0;
  double offset_ms = 0.0;

  double duration_ms() const { return offset_ms - onset_ms; }
};

struct CorpusManifest {
  std::vector<ManifestEntry> entries;
  // The closed set of class labels for this run, sorted. Either declared by
  // the caller or, when nothing is declared, the labels observed in the file.
  std::vector<std::string> class_set;
};

// Track CSV. Header `time_ms,f1_hz,f2_hz,f3_hz,f0_hz`; empty cell = missing.
// Lines starting with '#' are metadata and skipped; columns after the fifth
// are ignored. LF or CRLF line endings.
FormantTrack ParseTrackCsv(std::string_view text, std::string source_id = {});

// Writes the header and one row per frame, numbers with 17 significant
// digits. `comments` are emitted first as `# ...` lines.
std::string SerializeTrackCsv(const FormantTrack& track,
                              const std::vector<std::string>& comments = {});

// Praat "Formant 2" text object, long ("ooTextFile" with labels) or short
// format. Frame i is placed at (x1 + i dx) seconds; the first three formant
// frequencies become F1..F3.
FormantTrack ParsePraatFormant(std::string_view text, std::string source_id = {});

// RIFF/WAVE, PCM 16-bit, mono, sample rate >= 8000 Hz. Samples are scaled by
// 1/32768. Throws FormatError otherwise.
AudioBuffer ReadWav(std::span<const std::uint8_t> bytes);

// Encodes PCM 16-bit mono; samples are clipped to [-1, 1) and rounded.
std::vector<std::uint8_t> WriteWav(const AudioBuffer& audio);

struct ManifestOptions {
  // When set, every class_label must belong to this set.
  std::optional<std::vector<std::string>> declared_classes;
};

// Manifest CSV with header
// `path,vowel_label,class_label,language,source,onset_ms,offset_ms`.
// Columns may appear in any order. Throws ParseError with the row's line
// number on validation failure.
CorpusManifest ParseManifest(std::string_view text, const ManifestOptions& options = {});

// Reads a whole file into memory. Throws Error when the file cannot be read.
std::string ReadTextFile(const std::string& path);
std::vector<std::uint8_t> ReadBinaryFile(const std::string& path);

}  // namespace vtense

#endif  // VTENSE_INGEST_H_
