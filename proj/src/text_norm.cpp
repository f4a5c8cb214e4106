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

#include "reverbkit/text_norm.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

namespace reverbkit {

namespace {

// Inclusive codepoint ranges treated as punctuation beyond ASCII. Curated
// from the Unicode punctuation blocks in common text (general punctuation,
// CJK symbols, fullwidth forms, and the scattered BMP marks); codepoints
// outside the table pass through as word characters.
struct Range {
  uint32_t lo;
  uint32_t hi;
};

constexpr std::array<Range, 60> kPunctRanges = {{
    {0x00A1, 0x00A1}, {0x00A7, 0x00A7}, {0x00AB, 0x00AB}, {0x00B6, 0x00B7},
    {0x00BB, 0x00BB}, {0x00BF, 0x00BF}, {0x037E, 0x037E}, {0x0387, 0x0387},
    {0x055A, 0x055F}, {0x0589, 0x058A}, {0x05BE, 0x05BE}, {0x05C0, 0x05C0},
    {0x05C3, 0x05C3}, {0x05C6, 0x05C6}, {0x05F3, 0x05F4}, {0x0609, 0x060A},
    {0x060C, 0x060D}, {0x061B, 0x061B}, {0x061E, 0x061F}, {0x066A, 0x066D},
    {0x06D4, 0x06D4}, {0x0700, 0x070D}, {0x0964, 0x0965}, {0x0970, 0x0970},
    {0x0E4F, 0x0E4F}, {0x0E5A, 0x0E5B}, {0x0F04, 0x0F12}, {0x0F3A, 0x0F3D},
    {0x104A, 0x104F}, {0x10FB, 0x10FB}, {0x1360, 0x1368}, {0x166E, 0x166E},
    {0x169B, 0x169C}, {0x16EB, 0x16ED}, {0x17D4, 0x17D6}, {0x17D8, 0x17DA},
    {0x1800, 0x180A}, {0x2010, 0x2027}, {0x2030, 0x2043}, {0x2045, 0x2051},
    {0x2053, 0x205E}, {0x207D, 0x207E}, {0x208D, 0x208E}, {0x2308, 0x230B},
    {0x2329, 0x232A}, {0x2768, 0x2775}, {0x27E6, 0x27EF}, {0x2983, 0x2998},
    {0x2E00, 0x2E4F}, {0x3001, 0x3003}, {0x3008, 0x3011}, {0x3014, 0x301F},
    {0x3030, 0x3030}, {0x303D, 0x303D}, {0x30A0, 0x30A0}, {0x30FB, 0x30FB},
    {0xFE10, 0xFE19}, {0xFE30, 0xFE6B}, {0xFF01, 0xFF20}, {0xFF3B, 0xFF65},
}};

bool is_ascii_punct(uint32_t cp) {
  return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
         (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
}

bool is_punct(uint32_t cp) {
  if (cp < 0x80) return is_ascii_punct(cp);
  const auto it = std::upper_bound(
      kPunctRanges.begin(), kPunctRanges.end(), cp,
      [](uint32_t v, const Range& r) { return v < r.lo; });
  if (it == kPunctRanges.begin()) return false;
  return cp <= (it - 1)->hi;
}

// Fullwidth letters and digits in the FF01..FF65 block are not punctuation;
// carved out of the coarse ranges above.
bool is_fullwidth_word(uint32_t cp) {
  return (cp >= 0xFF10 && cp <= 0xFF19) ||  // digits
         (cp >= 0xFF21 && cp <= 0xFF3A) ||  // A-Z
         (cp >= 0xFF41 && cp <= 0xFF5A);    // a-z
}

bool is_apostrophe(uint32_t cp) { return cp == 0x27 || cp == 0x2019; }

bool is_space(uint32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' ||
         cp == '\v' || cp == 0x00A0 || cp == 0x2028 || cp == 0x2029 ||
         (cp >= 0x2000 && cp <= 0x200A) || cp == 0x3000;
}

// Simple case folding over the Latin, Greek, Cyrillic and fullwidth letter
// ranges; everything else folds to itself.
uint32_t fold(uint32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;
  if (cp >= 0x0100 && cp <= 0x0137) return cp | 1;       // Latin Extended-A
  if (cp >= 0x0139 && cp <= 0x0148) return ((cp + 1) | 1) - 1;
  if (cp >= 0x014A && cp <= 0x0177) return cp | 1;
  if (cp == 0x0178) return 0x00FF;
  if (cp >= 0x0179 && cp <= 0x017E) return ((cp + 1) | 1) - 1;
  if (cp == 0x0386) return 0x03AC;
  if (cp >= 0x0388 && cp <= 0x038A) return cp + 0x25;
  if (cp == 0x038C) return 0x03CC;
  if (cp >= 0x038E && cp <= 0x038F) return cp + 0x3F;
  if (cp >= 0x0391 && cp <= 0x03A1) return cp + 0x20;   // Greek
  if (cp >= 0x03A3 && cp <= 0x03AB) return cp + 0x20;
  if (cp >= 0x0400 && cp <= 0x040F) return cp + 0x50;   // Cyrillic
  if (cp >= 0x0410 && cp <= 0x042F) return cp + 0x20;
  if (cp >= 0xFF21 && cp <= 0xFF3A) return cp + 0x20;   // fullwidth
  return cp;
}

// Decodes the next UTF-8 codepoint; malformed bytes are taken as Latin-1.
uint32_t next_codepoint(std::string_view s, std::size_t* i) {
  const unsigned char b0 = static_cast<unsigned char>(s[*i]);
  std::size_t len = 0;
  uint32_t cp = 0;
  if (b0 < 0x80) {
    ++*i;
    return b0;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++*i;
    return b0;  // stray continuation byte
  }
  if (*i + len > s.size()) {
    ++*i;
    return b0;
  }
  for (std::size_t k = 1; k < len; ++k) {
    const unsigned char b = static_cast<unsigned char>(s[*i + k]);
    if ((b & 0xC0) != 0x80) {
      ++*i;
      return b0;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  *i += len;
  return cp;
}

void append_utf8(std::string* out, uint32_t cp) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

}  // namespace

std::vector<std::string> normalize_text(std::string_view raw) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  };
  std::size_t i = 0;
  while (i < raw.size()) {
    const uint32_t cp = next_codepoint(raw, &i);
    if (is_apostrophe(cp)) continue;  // deleted in place: don't -> dont
    if (is_space(cp) || (is_punct(cp) && !is_fullwidth_word(cp))) {
      flush();
      continue;
    }
    append_utf8(&current, fold(cp));
  }
  flush();
  return tokens;
}

}  // namespace reverbkit
