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

#include "vtense/ingest.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "vtense/error.h"
#include "vtense/text_io.h"

namespace vtense {

Channel FormantChannel(int n) {
  switch (n) {
    case 1: return Channel::kF1;
    case 2: return Channel::kF2;
    case 3: return Channel::kF3;
    default:
      throw DomainError("formant number must be 1, 2 or 3, got " + std::to_string(n));
  }
}

const char* ChannelName(Channel channel) {
  switch (channel) {
    case Channel::kF1: return "F1";
    case Channel::kF2: return "F2";
    case Channel::kF3: return "F3";
    case Channel::kF0: return "F0";
  }
  return "?";
}

const std::optional<double>& FormantFrame::Get(Channel channel) const {
  switch (channel) {
    case Channel::kF1: return f1_hz;
    case Channel::kF2: return f2_hz;
    case Channel::kF3: return f3_hz;
    case Channel::kF0: break;
  }
  return f0_hz;
}

std::optional<double>& FormantFrame::Get(Channel channel) {
  return const_cast<std::optional<double>&>(std::as_const(*this).Get(channel));
}

void FormantTrack::Validate() const {
  if (frames.size() < 2) {
    throw ParseError("a formant track needs at least 2 frames, got " +
                         std::to_string(frames.size()),
                     0);
  }
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const FormantFrame& frame = frames[i];
    const std::string where = "frame " + std::to_string(i + 1) + ": ";
    if (!std::isfinite(frame.time_ms)) throw ParseError(where + "non-finite time", 0);
    if (i > 0 && !(frame.time_ms > frames[i - 1].time_ms)) {
      throw ParseError(where + "times must be strictly increasing", 0);
    }
    for (Channel c : {Channel::kF1, Channel::kF2, Channel::kF3, Channel::kF0}) {
      const auto& v = frame.Get(c);
      if (v && !(std::isfinite(*v) && *v > 0.0)) {
        throw ParseError(where + ChannelName(c) + " must be positive and finite", 0);
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Track CSV

namespace {

constexpr const char* kTrackColumns[] = {"time_ms", "f1_hz", "f2_hz", "f3_hz", "f0_hz"};

bool IsComment(std::string_view line) {
  std::string_view t = Trim(line);
  return !t.empty() && t.front() == '#';
}

std::optional<double> ParseFrequencyCell(std::string_view cell, const char* column, int line) {
  cell = Trim(cell);
  if (cell.empty()) return std::nullopt;
  auto value = ParseDouble(cell);
  if (!value) {
    throw ParseError("malformed number '" + std::string(cell) + "' in column " + column, line);
  }
  if (!std::isfinite(*value) || *value <= 0.0) {
    throw ParseError(std::string(column) + " must be positive and finite", line);
  }
  return value;
}

}  // namespace

FormantTrack ParseTrackCsv(std::string_view text, std::string source_id) {
  FormantTrack track;
  track.source_id = std::move(source_id);
  bool have_header = false;
  int line_no = 0;
  for (std::string_view line : SplitLines(text)) {
    ++line_no;
    if (Trim(line).empty() || IsComment(line)) continue;
    std::vector<std::string> fields = SplitCsvRecord(line);
    if (!have_header) {
      if (fields.size() < 5) throw ParseError("track header needs 5 columns", line_no);
      for (int c = 0; c < 5; ++c) {
        if (Trim(fields[c]) != kTrackColumns[c]) {
          throw ParseError("expected header time_ms,f1_hz,f2_hz,f3_hz,f0_hz", line_no);
        }
      }
      have_header = true;
      continue;
    }
    if (fields.size() < 5) {
      throw ParseError("expected 5 fields, got " + std::to_string(fields.size()), line_no);
    }
    FormantFrame frame;
    auto time = ParseDouble(fields[0]);
    if (!time || !std::isfinite(*time)) {
      throw ParseError("malformed time_ms '" + fields[0] + "'", line_no);
    }
    frame.time_ms = *time;
    if (!track.frames.empty() && !(frame.time_ms > track.frames.back().time_ms)) {
      throw ParseError("time_ms must be strictly increasing (duplicate or earlier timestamp " +
                           fields[0] + ")",
                       line_no);
    }
    frame.f1_hz = ParseFrequencyCell(fields[1], "f1_hz", line_no);
    frame.f2_hz = ParseFrequencyCell(fields[2], "f2_hz", line_no);
    frame.f3_hz = ParseFrequencyCell(fields[3], "f3_hz", line_no);
    frame.f0_hz = ParseFrequencyCell(fields[4], "f0_hz", line_no);
    track.frames.push_back(frame);
  }
  if (!have_header) throw ParseError("empty track file", 0);
  if (track.frames.size() < 2) {
    throw ParseError("a formant track needs at least 2 rows, got " +
                         std::to_string(track.frames.size()),
                     line_no);
  }
  return track;
}

std::string SerializeTrackCsv(const FormantTrack& track, const std::vector<std::string>& comments) {
  std::string out;
  for (const auto& c : comments) out += "# " + c + "\n";
  out += "time_ms,f1_hz,f2_hz,f3_hz,f0_hz\n";
  for (const FormantFrame& f : track.frames) {
    out += FormatDouble(f.time_ms);
    for (Channel c : {Channel::kF1, Channel::kF2, Channel::kF3, Channel::kF0}) {
      out += ',';
      out += FormatOptional(f.Get(c));
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Praat Formant text objects

namespace {

struct PraatToken {
  bool is_string = false;
  std::string text;
  double number = 0.0;
  int line = 0;
};

// Keeps quoted strings and bare numbers; drops labels, '=' signs, bracketed
// indices (`frames [3]:`) and '!' comments. Long and short variants reduce to
// the same token stream.
std::vector<PraatToken> TokenizePraat(std::string_view text) {
  std::vector<PraatToken> tokens;
  int line = 1;
  std::size_t i = 0;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (is_space(c)) {
      ++i;
    } else if (c == '!') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '[') {
      while (i < text.size() && text[i] != ']') {
        if (text[i] == '\n') ++line;
        ++i;
      }
      if (i < text.size()) ++i;
    } else if (c == '"') {
      PraatToken tok;
      tok.is_string = true;
      tok.line = line;
      ++i;
      while (i < text.size()) {
        if (text[i] == '"') {
          if (i + 1 < text.size() && text[i + 1] == '"') {
            tok.text.push_back('"');
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        if (text[i] == '\n') ++line;
        tok.text.push_back(text[i++]);
      }
      tokens.push_back(std::move(tok));
    } else {
      std::size_t start = i;
      while (i < text.size() && !is_space(text[i]) && text[i] != '"' && text[i] != '[' &&
             text[i] != '!') {
        ++i;
      }
      std::string_view word = text.substr(start, i - start);
      if (word == "--undefined--") {
        tokens.push_back({false, std::string(word), std::numeric_limits<double>::quiet_NaN(), line});
      } else if (auto v = ParseDouble(word)) {
        tokens.push_back({false, std::string(word), *v, line});
      }
    }
  }
  return tokens;
}

class PraatReader {
 public:
  explicit PraatReader(std::vector<PraatToken> tokens) : tokens_(std::move(tokens)) {}

  std::string String(const char* what) {
    const PraatToken& t = Next(what);
    if (!t.is_string) throw ParseError(std::string("expected quoted ") + what, t.line);
    return t.text;
  }

  double Number(const char* what) {
    const PraatToken& t = Next(what);
    if (t.is_string) throw ParseError(std::string("expected number for ") + what, t.line);
    return t.number;
  }

  long Count(const char* what) {
    const PraatToken& t = Next(what);
    if (t.is_string || !(t.number >= 0.0) || t.number != std::floor(t.number)) {
      throw ParseError(std::string("expected non-negative integer for ") + what, t.line);
    }
    return static_cast<long>(t.number);
  }

  bool AtEnd() const { return pos_ >= tokens_.size(); }
  int line() const { return AtEnd() ? 0 : tokens_[pos_].line; }

 private:
  const PraatToken& Next(const char* what) {
    if (AtEnd()) {
      throw ParseError(std::string("unexpected end of file reading ") + what +
                           " (frame count nx does not match the data)",
                       0);
    }
    return tokens_[pos_++];
  }

  std::vector<PraatToken> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

FormantTrack ParsePraatFormant(std::string_view text, std::string source_id) {
  PraatReader in(TokenizePraat(text));
  std::string file_type = in.String("file type");
  if (file_type.rfind("ooTextFile", 0) != 0) {
    throw ParseError("not a Praat text file (file type \"" + file_type + "\")", 1);
  }
  std::string object_class = in.String("object class");
  if (object_class != "Formant 2") {
    throw ParseError("expected object class \"Formant 2\", got \"" + object_class + "\"", 2);
  }
  in.Number("xmin");
  in.Number("xmax");
  long nx = in.Count("nx");
  double dx = in.Number("dx");
  double x1 = in.Number("x1");
  in.Count("maxnFormants");
  if (!(dx > 0.0) || !std::isfinite(dx)) {
    throw ParseError("dx must be positive, got " + FormatDouble(dx), 0);
  }

  FormantTrack track;
  track.source_id = std::move(source_id);
  track.frames.reserve(static_cast<std::size_t>(nx));
  for (long i = 0; i < nx; ++i) {
    FormantFrame frame;
    frame.time_ms = (x1 + static_cast<double>(i) * dx) * 1000.0;
    in.Number("intensity");
    long n_formants = in.Count("nFormants");
    for (long k = 0; k < n_formants; ++k) {
      double frequency = in.Number("formant frequency");
      in.Number("formant bandwidth");
      if (k < 3 && std::isfinite(frequency) && frequency > 0.0) {
        frame.Get(FormantChannel(static_cast<int>(k) + 1)) = frequency;
      }
    }
    track.frames.push_back(frame);
  }
  if (!in.AtEnd()) {
    throw ParseError("data continues after nx=" + std::to_string(nx) +
                         " frames (frame count nx does not match the data)",
                     in.line());
  }
  track.Validate();
  return track;
}

// ---------------------------------------------------------------------------
// WAV

namespace {

std::uint32_t ReadU32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) |
         (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

std::uint16_t ReadU16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

bool TagIs(std::span<const std::uint8_t> b, std::size_t at, const char* tag) {
  return std::equal(tag, tag + 4, b.begin() + static_cast<std::ptrdiff_t>(at));
}

void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void PutU16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void PutTag(std::vector<std::uint8_t>& out, const char* tag) { out.insert(out.end(), tag, tag + 4); }

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

}  // namespace

AudioBuffer ReadWav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || !TagIs(bytes, 0, "RIFF") || !TagIs(bytes, 8, "WAVE")) {
    throw FormatError("not a RIFF/WAVE file");
  }
  bool have_fmt = false;
  std::uint16_t channels = 0;
  std::uint16_t bits = 0;
  std::uint32_t rate = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    std::uint32_t size = ReadU32(bytes, pos + 4);
    std::size_t body = pos + 8;
    if (size > bytes.size() - body) {
      throw FormatError("truncated chunk '" + std::string(bytes.begin() + pos, bytes.begin() + pos + 4) +
                        "': declares " + std::to_string(size) + " bytes, " +
                        std::to_string(bytes.size() - body) + " available");
    }
    if (TagIs(bytes, pos, "fmt ")) {
      if (size < 16) throw FormatError("fmt chunk too short");
      std::uint16_t format = ReadU16(bytes, body);
      channels = ReadU16(bytes, body + 2);
      rate = ReadU32(bytes, body + 4);
      bits = ReadU16(bytes, body + 14);
      if (format == kFormatExtensible && size >= 26) format = ReadU16(bytes, body + 24);
      if (format != kFormatPcm) {
        throw FormatError("unsupported WAV codec (format tag " + std::to_string(format) +
                          "); convert to 16-bit PCM first");
      }
      if (channels != 1) {
        throw FormatError("WAV has " + std::to_string(channels) +
                          " channels; only mono is supported, mix down to one channel first");
      }
      if (bits != 16) {
        throw FormatError("WAV uses " + std::to_string(bits) +
                          "-bit samples; only 16-bit PCM is supported, convert first");
      }
      if (rate < 8000) {
        throw FormatError("sample rate " + std::to_string(rate) + " Hz is below 8000 Hz");
      }
      have_fmt = true;
    } else if (TagIs(bytes, pos, "data")) {
      if (!have_fmt) throw FormatError("data chunk precedes fmt chunk");
      if (size % 2 != 0) throw FormatError("data chunk holds a partial 16-bit sample");
      if (size == 0) throw FormatError("WAV contains no samples");
      AudioBuffer audio;
      audio.sample_rate_hz = static_cast<int>(rate);
      audio.samples.resize(size / 2);
      for (std::size_t i = 0; i < audio.samples.size(); ++i) {
        auto raw = static_cast<std::int16_t>(ReadU16(bytes, body + 2 * i));
        audio.samples[i] = static_cast<double>(raw) / 32768.0;
      }
      return audio;
    }
    pos = body + size + (size & 1u);
  }
  throw FormatError(have_fmt ? "WAV has no data chunk" : "WAV has no fmt chunk");
}

std::vector<std::uint8_t> WriteWav(const AudioBuffer& audio) {
  const auto n = static_cast<std::uint32_t>(audio.samples.size());
  std::vector<std::uint8_t> out;
  out.reserve(44 + 2 * static_cast<std::size_t>(n));
  PutTag(out, "RIFF");
  PutU32(out, 36 + 2 * n);
  PutTag(out, "WAVE");
  PutTag(out, "fmt ");
  PutU32(out, 16);
  PutU16(out, kFormatPcm);
  PutU16(out, 1);
  PutU32(out, static_cast<std::uint32_t>(audio.sample_rate_hz));
  PutU32(out, static_cast<std::uint32_t>(audio.sample_rate_hz) * 2);
  PutU16(out, 2);
  PutU16(out, 16);
  PutTag(out, "data");
  PutU32(out, 2 * n);
  for (double s : audio.samples) {
    double scaled = std::nearbyint(std::clamp(s, -1.0, 1.0) * 32768.0);
    auto v = static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
    PutU16(out, static_cast<std::uint16_t>(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Manifest

CorpusManifest ParseManifest(std::string_view text, const ManifestOptions& options) {
  static constexpr const char* kColumns[] = {"path",     "vowel_label", "class_label", "language",
                                             "source",   "onset_ms",    "offset_ms"};
  CorpusManifest manifest;
  std::map<std::string, std::size_t> index;
  std::size_t header_width = 0;
  int line_no = 0;
  for (std::string_view line : SplitLines(text)) {
    ++line_no;
    if (Trim(line).empty() || IsComment(line)) continue;
    std::vector<std::string> fields = SplitCsvRecord(line);
    if (header_width == 0) {
      for (std::size_t i = 0; i < fields.size(); ++i) index[std::string(Trim(fields[i]))] = i;
      for (const char* col : kColumns) {
        if (!index.count(col)) throw ParseError(std::string("manifest is missing column ") + col, line_no);
      }
      header_width = fields.size();
      continue;
    }
    if (fields.size() < header_width) {
      throw ParseError("row has " + std::to_string(fields.size()) + " fields, header has " +
                           std::to_string(header_width),
                       line_no);
    }
    auto field = [&](const char* col) { return std::string(Trim(fields[index[col]])); };
    ManifestEntry e;
    e.path = field("path");
    e.vowel_label = field("vowel_label");
    e.class_label = field("class_label");
    e.language = field("language");
    e.source = field("source");
    if (e.path.empty()) throw ParseError("empty path", line_no);
    if (e.class_label.empty()) throw ParseError("empty class_label", line_no);
    auto onset = ParseDouble(field("onset_ms"));
    auto offset = ParseDouble(field("offset_ms"));
    if (!onset || !std::isfinite(*onset)) throw ParseError("malformed onset_ms", line_no);
    if (!offset || !std::isfinite(*offset)) throw ParseError("malformed offset_ms", line_no);
    if (!(*onset < *offset)) {
      throw ParseError("onset_ms (" + field("onset_ms") + ") must be less than offset_ms (" +
                           field("offset_ms") + ")",
                       line_no);
    }
    e.onset_ms = *onset;
    e.offset_ms = *offset;
    if (options.declared_classes) {
      const auto& allowed = *options.declared_classes;
      if (std::find(allowed.begin(), allowed.end(), e.class_label) == allowed.end()) {
        throw ParseError("class_label '" + e.class_label + "' is not in the declared class set",
                         line_no);
      }
    }
    manifest.entries.push_back(std::move(e));
  }
  if (header_width == 0) throw ParseError("empty manifest", 0);
  std::set<std::string> classes;
  if (options.declared_classes) {
    classes.insert(options.declared_classes->begin(), options.declared_classes->end());
  } else {
    for (const auto& e : manifest.entries) classes.insert(e.class_label);
  }
  manifest.class_set.assign(classes.begin(), classes.end());
  return manifest;
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::uint8_t> ReadBinaryFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

}  // namespace vtense
