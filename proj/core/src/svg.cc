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

#include "vtense/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "vtense/error.h"
#include "vtense/text_io.h"

namespace vtense {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 30.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 70.0;
constexpr double kPad = 0.05;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string Px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  // Avoid "-0.00".
  if (std::string_view(buf) == "-0.00") return "0.00";
  return buf;
}

std::string Tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string Escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo;
  double hi;
};

Range Padded(double lo, double hi, bool include_zero = false) {
  if (include_zero) {
    lo = std::min(lo, 0.0);
    hi = std::max(hi, 0.0);
  }
  double span = hi - lo;
  if (span <= 0.0) span = std::max(std::abs(lo), 1.0);
  return {lo - kPad * span, hi + kPad * span};
}

class Canvas {
 public:
  Canvas(std::string title, std::string x_label, std::string y_label)
      : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

  void SetRanges(Range x, Range y) {
    x_ = x;
    y_ = y;
  }
  double X(double v) const { return kLeft + (v - x_.lo) / (x_.hi - x_.lo) * (kWidth - kLeft - kRight); }
  double Y(double v) const { return kHeight - kBottom - (v - y_.lo) / (y_.hi - y_.lo) * (kHeight - kTop - kBottom); }

  std::string& body() { return body_; }

  void Axes(bool x_ticks) {
    std::string& a = axes_;
    a += "<g class=\"axes\" stroke=\"#000\" fill=\"none\">\n";
    a += "<line x1=\"" + Px(kLeft) + "\" y1=\"" + Px(kHeight - kBottom) + "\" x2=\"" + Px(kWidth - kRight) +
         "\" y2=\"" + Px(kHeight - kBottom) + "\"/>\n";
    a += "<line x1=\"" + Px(kLeft) + "\" y1=\"" + Px(kTop) + "\" x2=\"" + Px(kLeft) + "\" y2=\"" +
         Px(kHeight - kBottom) + "\"/>\n";
    a += "</g>\n<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int i = 0; i <= 4; ++i) {
      const double v = y_.lo + (y_.hi - y_.lo) * i / 4.0;
      a += "<text x=\"" + Px(kLeft - 6) + "\" y=\"" + Px(Y(v) + 4) + "\" text-anchor=\"end\">" + Tick(v) +
           "</text>\n";
    }
    if (x_ticks) {
      for (int i = 0; i <= 4; ++i) {
        const double v = x_.lo + (x_.hi - x_.lo) * i / 4.0;
        a += "<text x=\"" + Px(X(v)) + "\" y=\"" + Px(kHeight - kBottom + 16) + "\" text-anchor=\"middle\">" +
             Tick(v) + "</text>\n";
      }
    }
    a += "</g>\n";
  }

  void Legend(const std::vector<std::string>& labels) {
    std::string& a = legend_;
    a += "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const double y = kTop + 4 + 16.0 * static_cast<double>(i);
      a += "<rect x=\"" + Px(kWidth - kRight - 120) + "\" y=\"" + Px(y) + "\" width=\"10\" height=\"10\" fill=\"" +
           kPalette[i % std::size(kPalette)] + "\"/>\n";
      a += "<text x=\"" + Px(kWidth - kRight - 104) + "\" y=\"" + Px(y + 9) + "\">" + Escape(labels[i]) +
           "</text>\n";
    }
    a += "</g>\n";
  }

  std::string Render(std::string_view kind) const {
    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\" "
         "data-kind=\"" + std::string(kind) + "\"";
    if (!hash_.empty()) s += " data-config-hash=\"" + Escape(hash_) + "\"";
    s += ">\n";
    s += "<rect width=\"800\" height=\"600\" fill=\"#fff\"/>\n";
    s += "<text x=\"400.00\" y=\"28.00\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         Escape(title_) + "</text>\n";
    s += "<text x=\"" + Px((kLeft + kWidth - kRight) / 2) + "\" y=\"" + Px(kHeight - 20) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + Escape(x_label_) + "</text>\n";
    s += "<text x=\"20.00\" y=\"" + Px((kTop + kHeight - kBottom) / 2) + "\" transform=\"rotate(-90 20.00 " +
         Px((kTop + kHeight - kBottom) / 2) + ")\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">" + Escape(y_label_) + "</text>\n";
    s += axes_ + body_ + legend_;
    s += "</svg>\n";
    return s;
  }

  void SetHash(std::string hash) { hash_ = std::move(hash); }

 private:
  std::string title_;
  std::string x_label_;
  std::string y_label_;
  std::string hash_;
  Range x_{0, 1};
  Range y_{0, 1};
  std::string axes_;
  std::string body_;
  std::string legend_;
};

std::string Circle(double cx, double cy, std::string_view color, std::string_view label) {
  return "<circle class=\"marker\" cx=\"" + Px(cx) + "\" cy=\"" + Px(cy) + "\" r=\"4\" fill=\"" +
         std::string(color) + "\" data-label=\"" + Escape(label) + "\"/>\n";
}

const std::string& FieldOf(const RecordRow& row, std::string_view field) {
  if (field == "class_label") return row.labels.class_label;
  if (field == "source") return row.labels.source;
  if (field == "language") return row.labels.language;
  if (field == "vowel_label") return row.labels.vowel_label;
  throw ConfigError("unknown record field '" + std::string(field) + "'");
}

}  // namespace

std::optional<SvgKind> ParseSvgKind(std::string_view name) {
  if (name == "strip1d") return SvgKind::kStrip1d;
  if (name == "scatter2d_f1") return SvgKind::kScatter2dF1;
  if (name == "scatter2d_df0") return SvgKind::kScatter2dDf0;
  if (name == "curves") return SvgKind::kCurves;
  return std::nullopt;
}

const char* SvgKindName(SvgKind kind) {
  switch (kind) {
    case SvgKind::kStrip1d: return "strip1d";
    case SvgKind::kScatter2dF1: return "scatter2d_f1";
    case SvgKind::kScatter2dDf0: return "scatter2d_df0";
    case SvgKind::kCurves: return "curves";
  }
  return "unknown";
}

std::string EmitRecordsSvg(const RecordsTable& table, SvgKind kind, std::string_view class_field) {
  if (kind == SvgKind::kCurves) throw ConfigError("curves charts take force profiles, not records");

  // Selection: ok rows, plus delta F0 for the df0 kind.
  struct Point {
    double x;
    double y;
    std::size_t group;
    std::string label;
  };
  std::vector<std::string> groups;
  std::map<std::string, std::size_t> group_index;
  std::vector<Point> points;
  for (const RecordRow& row : table.rows) {
    if (!row.ok()) continue;
    const TensenessRecord& r = *row.record;
    if (kind == SvgKind::kScatter2dDf0 && !r.delta_f0_hz) continue;
    const std::string& g = FieldOf(row, class_field);
    auto [it, inserted] = group_index.emplace(g, groups.size());
    if (inserted) groups.push_back(g);
    const double y = kind == SvgKind::kScatter2dF1   ? r.f1_33_hz
                     : kind == SvgKind::kScatter2dDf0 ? *r.delta_f0_hz
                                                      : r.theta1_rad;
    points.push_back({r.theta1_rad, y, it->second, row.labels.vowel_label});
  }
  if (points.empty()) {
    throw InsufficientDataError(kind == SvgKind::kScatter2dDf0
                                    ? "no ok rows with delta_f0_hz to plot (filter: status=ok and F0 present)"
                                    : "no ok rows to plot (filter: status=ok)");
  }

  if (kind == SvgKind::kStrip1d) {
    Canvas canvas("One-dimensional map of theta1", std::string(class_field), "theta1 (rad)");
    canvas.SetHash(table.config_hash);
    double lo = points.front().y;
    double hi = lo;
    for (const Point& p : points) {
      lo = std::min(lo, p.y);
      hi = std::max(hi, p.y);
    }
    const double columns = static_cast<double>(groups.size());
    canvas.SetRanges({0.0, columns}, Padded(lo, hi, true));
    canvas.Axes(false);
    std::string& b = canvas.body();
    b += "<line class=\"zero-line\" x1=\"" + Px(kLeft) + "\" y1=\"" + Px(canvas.Y(0.0)) + "\" x2=\"" +
         Px(kWidth - kRight) + "\" y2=\"" + Px(canvas.Y(0.0)) + "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const double cx = canvas.X(static_cast<double>(g) + 0.5);
      const char* color = kPalette[g % std::size(kPalette)];
      b += "<g class=\"column\" data-label=\"" + Escape(groups[g]) + "\">\n";
      std::vector<double> values;
      int i = 0;
      for (const Point& p : points) {
        if (p.group != g) continue;
        values.push_back(p.y);
        const double jitter = static_cast<double>((i % 7) - 3) * 6.0;
        b += Circle(cx + jitter, canvas.Y(p.y), color, p.label);
        ++i;
      }
      const double med = Median(values);
      b += "<line class=\"median\" x1=\"" + Px(cx - 30) + "\" y1=\"" + Px(canvas.Y(med)) + "\" x2=\"" +
           Px(cx + 30) + "\" y2=\"" + Px(canvas.Y(med)) + "\" stroke=\"#000\" stroke-width=\"2\"/>\n";
      b += "<text x=\"" + Px(cx) + "\" y=\"" + Px(kHeight - kBottom + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + Escape(groups[g]) + "</text>\n";
      b += "</g>\n";
    }
    return canvas.Render(SvgKindName(kind));
  }

  const bool f1 = kind == SvgKind::kScatter2dF1;
  Canvas canvas(f1 ? "Two-dimensional map of theta1 and F1 at 33%" : "theta1 against F0 change",
                "theta1 (rad)", f1 ? "F1_33 (Hz)" : "F0_66 - F0_33 (Hz)");
  canvas.SetHash(table.config_hash);
  double xlo = points.front().x, xhi = xlo, ylo = points.front().y, yhi = ylo;
  for (const Point& p : points) {
    xlo = std::min(xlo, p.x);
    xhi = std::max(xhi, p.x);
    ylo = std::min(ylo, p.y);
    yhi = std::max(yhi, p.y);
  }
  canvas.SetRanges(Padded(xlo, xhi, true), Padded(ylo, yhi));
  canvas.Axes(true);
  std::string& b = canvas.body();
  b += "<line class=\"zero-line\" x1=\"" + Px(canvas.X(0.0)) + "\" y1=\"" + Px(kTop) + "\" x2=\"" +
       Px(canvas.X(0.0)) + "\" y2=\"" + Px(kHeight - kBottom) + "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
  for (std::size_t g = 0; g < groups.size(); ++g) {
    b += "<g class=\"group\" data-label=\"" + Escape(groups[g]) + "\">\n";
    for (const Point& p : points) {
      if (p.group == g) b += Circle(canvas.X(p.x), canvas.Y(p.y), kPalette[g % std::size(kPalette)], p.label);
    }
    b += "</g>\n";
  }
  canvas.Legend(groups);
  return canvas.Render(SvgKindName(kind));
}

std::string EmitCurvesSvg(const std::vector<LabeledProfile>& profiles) {
  if (profiles.empty()) throw InsufficientDataError("no force profiles to plot (filter: curves input files)");
  double xlo = 0, xhi = 0, ylo = 0, yhi = 0;
  bool first = true;
  for (const LabeledProfile& lp : profiles) {
    if (lp.profile.times_ds.size() != lp.profile.a_tense.size() || lp.profile.times_ds.empty()) {
      throw InsufficientDataError("force profile '" + lp.label + "' is empty");
    }
    for (std::size_t i = 0; i < lp.profile.times_ds.size(); ++i) {
      const double t = lp.profile.times_ds[i];
      const double a = lp.profile.a_tense[i];
      if (first) {
        xlo = xhi = t;
        ylo = yhi = a;
        first = false;
      }
      xlo = std::min(xlo, t);
      xhi = std::max(xhi, t);
      ylo = std::min(ylo, a);
      yhi = std::max(yhi, a);
    }
  }
  Canvas canvas("Acceleration of tenseness", "t (ds)", "a_tense (Bark/ds^2)");
  canvas.SetRanges(Padded(xlo, xhi), Padded(ylo, yhi, true));
  canvas.Axes(true);
  std::string& b = canvas.body();
  b += "<line class=\"zero-line\" x1=\"" + Px(kLeft) + "\" y1=\"" + Px(canvas.Y(0.0)) + "\" x2=\"" +
       Px(kWidth - kRight) + "\" y2=\"" + Px(canvas.Y(0.0)) + "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
  std::vector<std::string> labels;
  for (std::size_t g = 0; g < profiles.size(); ++g) {
    const ForceProfile& p = profiles[g].profile;
    labels.push_back(profiles[g].label);
    std::string pts;
    for (std::size_t i = 0; i < p.times_ds.size(); ++i) {
      if (i) pts += ' ';
      pts += Px(canvas.X(p.times_ds[i])) + "," + Px(canvas.Y(p.a_tense[i]));
    }
    b += "<polyline class=\"curve\" data-label=\"" + Escape(profiles[g].label) + "\" fill=\"none\" stroke=\"" +
         kPalette[g % std::size(kPalette)] + "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
  }
  canvas.Legend(labels);
  return canvas.Render("curves");
}

}  // namespace vtense
