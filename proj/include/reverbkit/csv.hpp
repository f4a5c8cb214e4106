// Copyright 2026 The reverbkit Authors
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

#ifndef REVERBKIT_CSV_HPP
#define REVERBKIT_CSV_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace reverbkit {

// Numeric fields use the shortest representation that round-trips exactly
// (std::to_chars), so repeated runs emit byte-identical files. Sentinels are
// the literals "inf", "-inf" and "NA" (NA maps to NaN / missing).
std::string format_double(double v);
double parse_double(std::string_view s);

std::string format_optional(const std::optional<double>& v);
std::optional<double> parse_optional(std::string_view s);

// Minimal RFC-4180 style CSV. Fields containing a comma, quote, CR or LF are
// quoted; quotes are doubled. Parsing accepts both quoted and bare fields.
std::string csv_join(const std::vector<std::string>& fields);
std::vector<std::string> csv_split(std::string_view line);

// Reads all rows (header included) of a CSV file. Handles quoted fields that
// span multiple lines. Throws IoFailure if the file cannot be opened.
std::vector<std::vector<std::string>> read_csv(
    const std::filesystem::path& path);

// Writes the file atomically: to a temporary sibling first, then renames.
void write_text_atomic(const std::filesystem::path& path,
                       const std::string& contents);

}  // namespace reverbkit

#endif  // REVERBKIT_CSV_HPP
