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

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "vtense/error.h"

namespace vtense {
namespace {

// Little-endian RIFF builder independent of WriteWav.
std::vector<std::uint8_t> MakeWav(const std::vector<std::int16_t>& samples, int rate, int channels = 1,
                                  int format = 1, int bits = 16) {
  std::vector<std::uint8_t> b;
  auto put32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  };
  auto put16 = [&](std::uint16_t v) {
    b.push_back(static_cast<std::uint8_t>(v));
    b.push_back(static_cast<std::uint8_t>(v >> 8));
  };
  auto tag = [&](const char* t) { b.insert(b.end(), t, t + 4); };
  const auto data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
  tag("RIFF");
  put32(36 + data_bytes);
  tag("WAVE");
  tag("fmt ");
  put32(16);
  put16(static_cast<std::uint16_t>(format));
  put16(static_cast<std::uint16_t>(channels));
  put32(static_cast<std::uint32_t>(rate));
  put32(static_cast<std::uint32_t>(rate * channels * bits / 8));
  put16(static_cast<std::uint16_t>(channels * bits / 8));
  put16(static_cast<std::uint16_t>(bits));
  tag("data");
  put32(data_bytes);
  for (std::int16_t s : samples) put16(static_cast<std::uint16_t>(s));
  return b;
}

TEST(ParseTrackCsv, TwoRows) {
  const FormantTrack t = ParseTrackCsv("time_ms,f1_hz,f2_hz,f3_hz,f0_hz\n0,500,1500,2500,120\n10,510,1490,2510,121\n");
  ASSERT_EQ(t.frames.size(), 2u);
  EXPECT_DOUBLE_EQ(t.frames[1].time_ms, 10.0);
  EXPECT_DOUBLE_EQ(*t.frames[1].f1_hz, 510.0);
}

TEST(ParseTrackCsv, EmptyCellIsMissing) {
  const FormantTrack t = ParseTrackCsv("time_ms,f1_hz,f2_hz,f3_hz,f0_hz\r\n0,500,1500,2500,\r\n10,510,,2510,121\r\n");
  EXPECT_FALSE(t.frames[0].f0_hz.has_value());
  EXPECT_FALSE(t.frames[1].f2_hz.has_value());
  EXPECT_TRUE(t.frames[1].f0_hz.has_value());
}

TEST(ParseTrackCsv, DuplicateTimestampNamesLine) {
  try {
    ParseTrackCsv("time_ms,f1_hz,f2_hz,f3_hz,f0_hz\n0,500,,,\n10,510,,,\n10,520,,,\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
  }
}

TEST(ParseTrackCsv, Rejections) {
  EXPECT_THROW(ParseTrackCsv("time_ms,f1_hz,f2_hz,f3_hz,f0_hz\n0,500,,,\n"), ParseError);
  EXPECT_THROW(ParseTrackCsv("time_ms,f1_hz,f2_hz,f3_hz,f0_hz\n0,5x0,,,\n10,500,,,\n"), ParseError);
  EXPECT_THROW(ParseTrackCsv("time,f1,f2,f3,f0\n0,500,,,\n10,500,,,\n"), ParseError);
  EXPECT_THROW(ParseTrackCsv("time_ms,f1_hz,f2_hz,f3_hz,f0_hz\n0,-5,,,\n10,500,,,\n"), ParseError);
  EXPECT_THROW(ParseTrackCsv(""), ParseError);
}

TEST(ParseTrackCsv, CommentsAndExtraColumns) {
  const FormantTrack t =
      ParseTrackCsv("# note\ntime_ms,f1_hz,f2_hz,f3_hz,f0_hz,y,vy\n0,500,,,,1,0\n# mid\n10,510,,,,2,0\n");
  EXPECT_EQ(t.frames.size(), 2u);
}

TEST(ParseTrackCsv, SerializeRoundTripIsBitExact) {
  FormantTrack t;
  for (int i = 0; i < 20; ++i) {
    FormantFrame f;
    f.time_ms = i * 3.3333333333333335;
    f.f1_hz = 412.0 + std::sin(i) * 77.123456789012345;
    if (i % 3) f.f2_hz = 1523.0 / 3.0 + i;
    if (i % 4) f.f0_hz = 0.1 + 100.0 / 7.0 * i;
    t.frames.push_back(f);
  }
  const FormantTrack back = ParseTrackCsv(SerializeTrackCsv(t, {"a comment"}));
  EXPECT_EQ(back.frames, t.frames);
}

constexpr const char* kShortPraat =
    "File type = \"ooTextFile\"\nObject class = \"Formant 2\"\n\n"
    "0\n0.05\n3\n0.01\n0.02\n5\n"
    "1e-3\n3\n500\n80\n1500\n120\n2500\n200\n"
    "1e-3\n2\n510\n81\n1490\n121\n"
    "1e-3\n4\n520\n82\n1480\n122\n2520\n210\n3500\n300\n";

constexpr const char* kLongPraat =
    "File type = \"ooTextFile\"\nObject class = \"Formant 2\"\n\n"
    "xmin = 0 \nxmax = 0.05 \nnx = 3 \ndx = 0.01 \nx1 = 0.02 \nmaxnFormants = 5 \n"
    "frames []: \n"
    "    frames [1]:\n        intensity = 1e-3 \n        numberOfFormants = 3 \n        formant []:\n"
    "            formant [1]:\n                frequency = 500 \n                bandwidth = 80 \n"
    "            formant [2]:\n                frequency = 1500 \n                bandwidth = 120 \n"
    "            formant [3]:\n                frequency = 2500 \n                bandwidth = 200 \n"
    "    frames [2]:\n        intensity = 1e-3 \n        numberOfFormants = 2 \n        formant []:\n"
    "            formant [1]:\n                frequency = 510 \n                bandwidth = 81 \n"
    "            formant [2]:\n                frequency = 1490 \n                bandwidth = 121 \n"
    "    frames [3]:\n        intensity = 1e-3 \n        numberOfFormants = 4 \n        formant []:\n"
    "            formant [1]:\n                frequency = 520 \n                bandwidth = 82 \n"
    "            formant [2]:\n                frequency = 1480 \n                bandwidth = 122 \n"
    "            formant [3]:\n                frequency = 2520 \n                bandwidth = 210 \n"
    "            formant [4]:\n                frequency = 3500 \n                bandwidth = 300 \n";

TEST(ParsePraatFormant, ShortFormatTimes) {
  const FormantTrack t = ParsePraatFormant(kShortPraat);
  ASSERT_EQ(t.frames.size(), 3u);
  EXPECT_NEAR(t.frames[0].time_ms, 20.0, 1e-9);
  EXPECT_NEAR(t.frames[1].time_ms, 30.0, 1e-9);
  EXPECT_NEAR(t.frames[2].time_ms, 40.0, 1e-9);
  EXPECT_FALSE(t.frames[1].f3_hz.has_value());
  EXPECT_DOUBLE_EQ(*t.frames[2].f3_hz, 2520.0);
  EXPECT_FALSE(t.frames[0].f0_hz.has_value());
}

TEST(ParsePraatFormant, LongFormatMatchesShortTwin) {
  EXPECT_EQ(ParsePraatFormant(kLongPraat).frames, ParsePraatFormant(kShortPraat).frames);
}

TEST(ParsePraatFormant, Rejections) {
  std::string pitch = kShortPraat;
  pitch.replace(pitch.find("Formant 2"), 9, "Pitch 1");
  EXPECT_THROW(ParsePraatFormant(pitch), ParseError);

  std::string negative_dx = kShortPraat;
  negative_dx.replace(negative_dx.find("0.01"), 4, "-0.01");
  EXPECT_THROW(ParsePraatFormant(negative_dx), ParseError);

  std::string too_many = kShortPraat;
  too_many.replace(too_many.find("\n3\n0.01"), 2, "\n4");
  EXPECT_THROW(ParsePraatFormant(too_many), ParseError);

  std::string too_few = kShortPraat;
  too_few.replace(too_few.find("\n3\n0.01"), 2, "\n2");
  EXPECT_THROW(ParsePraatFormant(too_few), ParseError);
}

TEST(ReadWav, HeaderEcho) {
  const AudioBuffer a = ReadWav(MakeWav(std::vector<std::int16_t>(441, 0), 44100));
  EXPECT_EQ(a.samples.size(), 441u);
  EXPECT_EQ(a.sample_rate_hz, 44100);
}

TEST(ReadWav, ScalingBoundary) {
  const AudioBuffer a = ReadWav(MakeWav({-32768, 32767, 0, 16384}, 8000));
  EXPECT_EQ(a.samples[0], -1.0);
  EXPECT_EQ(a.samples[1], 32767.0 / 32768.0);
  EXPECT_EQ(a.samples[3], 0.5);
}

TEST(ReadWav, RejectsUnsupportedLayouts) {
  try {
    ReadWav(MakeWav({0, 0, 0, 0}, 16000, 2));
    FAIL() << "stereo accepted";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("mix"), std::string::npos) << e.what();
  }
  EXPECT_THROW(ReadWav(MakeWav({0, 0}, 16000, 1, 3)), FormatError);
  EXPECT_THROW(ReadWav(MakeWav({0, 0}, 4000)), FormatError);
  auto truncated = MakeWav(std::vector<std::int16_t>(100, 1), 16000);
  truncated.resize(truncated.size() - 10);
  EXPECT_THROW(ReadWav(truncated), FormatError);
  EXPECT_THROW(ReadWav(std::vector<std::uint8_t>{'R', 'I', 'F', 'F'}), FormatError);
}

TEST(WriteWav, RoundTripsThroughReader) {
  AudioBuffer a;
  a.sample_rate_hz = 16000;
  for (int i = 0; i < 100; ++i) a.samples.push_back(std::round(std::sin(i * 0.1) * 30000.0) / 32768.0);
  const AudioBuffer b = ReadWav(WriteWav(a));
  EXPECT_EQ(b.samples, a.samples);
  EXPECT_EQ(b.sample_rate_hz, 16000);
}

constexpr const char* kManifestHeader = "path,vowel_label,class_label,language,source,onset_ms,offset_ms\n";

TEST(ParseManifest, WellFormedRow) {
  const CorpusManifest m = ParseManifest(std::string(kManifestHeader) + "a.wav,i:,tense,en,cambridge,100,280\n");
  ASSERT_EQ(m.entries.size(), 1u);
  EXPECT_DOUBLE_EQ(m.entries[0].duration_ms(), 180.0);
  EXPECT_EQ(m.entries[0].source, "cambridge");
}

TEST(ParseManifest, OnsetAfterOffsetNamesRow) {
  try {
    ParseManifest(std::string(kManifestHeader) + "a.wav,i:,tense,en,c,100,280\nb.wav,i:,tense,en,c,300,200\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(ParseManifest, MissingColumn) {
  EXPECT_THROW(ParseManifest("path,vowel_label,class_label,language,onset_ms,offset_ms\na,i:,tense,en,1,2\n"),
               ParseError);
}

TEST(ParseManifest, ColumnOrderIsFree) {
  const CorpusManifest m =
      ParseManifest("offset_ms,onset_ms,source,language,class_label,vowel_label,path\n280,100,c,en,lax,I,x.csv\n");
  EXPECT_EQ(m.entries[0].path, "x.csv");
  EXPECT_DOUBLE_EQ(m.entries[0].onset_ms, 100.0);
}

TEST(ParseManifest, MixedClassSetsUnderDeclaredSet) {
  const std::string text = std::string(kManifestHeader) +
                           "a.wav,i:,tense,en,c,0,100\nb.wav,I,lax,en,c,0,100\n"
                           "c.wav,uR,HL,ja,t,0,100\nd.wav,uR,LH,ja,t,0,100\n";
  ManifestOptions options;
  options.declared_classes = std::vector<std::string>{"tense", "lax", "HL", "LH"};
  const CorpusManifest m = ParseManifest(text, options);
  EXPECT_EQ(m.entries.size(), 4u);
  EXPECT_EQ(m.class_set, (std::vector<std::string>{"HL", "LH", "lax", "tense"}));

  options.declared_classes = std::vector<std::string>{"tense", "lax"};
  EXPECT_THROW(ParseManifest(text, options), ParseError);
  EXPECT_EQ(ParseManifest(text).class_set.size(), 4u);
}

TEST(ParseManifest, EmptyPathRejected) {
  EXPECT_THROW(ParseManifest(std::string(kManifestHeader) + ",i:,tense,en,c,0,100\n"), ParseError);
}

}  // namespace
}  // namespace vtense
