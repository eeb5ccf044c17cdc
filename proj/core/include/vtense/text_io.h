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

// Small text helpers shared by the CSV readers and writers.

#ifndef VTENSE_TEXT_IO_H_
#define VTENSE_TEXT_IO_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vtense {

// Splits on LF, dropping a trailing CR from each line. The final line is
// dropped when empty.
std::vector<std::string_view> SplitLines(std::string_view text);

// Splits one CSV record. Supports double-quoted fields with "" escapes.
std::vector<std::string> SplitCsvRecord(std::string_view line);

// Quotes a field if it contains a comma, quote or newline.
std::string CsvField(std::string_view value);

std::string_view Trim(std::string_view s);

// Parses the full string as a double (no surrounding junk). Returns nullopt on
// failure.
std::optional<double> ParseDouble(std::string_view s);

// Shortest-safe round-trip representation: 17 significant digits.
std::string FormatDouble(double value);
std::string FormatOptional(const std::optional<double>& value);

// FNV-1a 64-bit digest as 16 lowercase hex digits.
std::string Fnv1a64Hex(std::string_view data);

}  // namespace vtense

#endif  // VTENSE_TEXT_IO_H_
