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

#ifndef REVERBKIT_TEXT_NORM_HPP
#define REVERBKIT_TEXT_NORM_HPP

#include <string>
#include <string_view>
#include <vector>

namespace reverbkit {

// Version tag of the normalization rules below. Bump on any change: scoring
// results are only comparable under the same rules.
inline constexpr int kTextNormVersion = 1;

// Normalizes a transcript into the token sequence used for scoring:
//   1. simple case folding (ASCII, Latin-1/Extended-A, Greek, Cyrillic and
//      fullwidth letters; other codepoints pass through),
//   2. apostrophes (' and U+2019) are deleted in place, so "don't" -> "dont",
//   3. every other punctuation character becomes a separator,
//   4. tokens are the maximal runs between whitespace/separators.
// Input is treated as UTF-8; bytes that do not form a valid sequence are
// interpreted as Latin-1.
std::vector<std::string> normalize_text(std::string_view raw);

}  // namespace reverbkit

#endif  // REVERBKIT_TEXT_NORM_HPP
