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

// Deterministic SVG feature maps: 800x600 canvas, coordinates rounded to
// 0.01 px, data ranges padded by 5%.

#ifndef VTENSE_SVG_H_
#define VTENSE_SVG_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vtense/report.h"

namespace vtense {

enum class SvgKind { kStrip1d, kScatter2dF1, kScatter2dDf0, kCurves };

std::optional<SvgKind> ParseSvgKind(std::string_view name);
const char* SvgKindName(SvgKind kind);

// strip1d: theta1 per class with median ticks and a zero line.
// scatter2d_f1: theta1 x F1_33. scatter2d_df0: theta1 x (F0_66 - F0_33).
// Only ok rows are drawn. Throws Error naming the filter when nothing is
// left to plot.
std::string EmitRecordsSvg(const RecordsTable& table, SvgKind kind,
                           std::string_view class_field = "class_label");

// a_tense(t) curves, one polyline per profile.
std::string EmitCurvesSvg(const std::vector<LabeledProfile>& profiles);

}  // namespace vtense

#endif  // VTENSE_SVG_H_
