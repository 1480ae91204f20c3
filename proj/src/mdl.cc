// Copyright 2026 The morphoseg Authors.
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

#include "morphoseg/mdl.h"

#include "morphoseg/error.h"
#include "morphoseg/utf8.h"

namespace morphoseg {

double CodeLengthMultinomial(std::span<const int64_t> counts) {
  if (counts.empty()) {
    throw Error(ErrorCode::kInvalidCounts, "empty count vector");
  }
  double total = 0.0;
  for (int64_t c : counts) {
    if (c <= 0) {
      throw Error(ErrorCode::kInvalidCounts,
                  "count " + std::to_string(c) + " is not positive");
    }
    total += static_cast<double>(c);
  }
  double bits = 0.0;
  for (int64_t c : counts) {
    const double x = static_cast<double>(c);
    bits += x * std::log2(total / x);
  }
  return bits;
}

CodeLengthReport CodeLengthReport::FromParts(
    std::map<std::string, double> parts) {
  CodeLengthReport report;
  for (const auto& [name, bits] : parts) report.total_bits += bits;
  report.parts = std::move(parts);
  return report;
}

double CodeLengthReport::part(const std::string& name) const {
  auto it = parts.find(name);
  return it == parts.end() ? 0.0 : it->second;
}

int64_t CharCounts::total() const {
  int64_t t = end;
  for (const auto& [c, n] : chars) t += n;
  return t;
}

CharCounts PooledCharCounts(const Lexicon& lexicon) {
  CharCounts counts;
  for (const auto& [morph, n] : lexicon.morphs()) {
    for (char32_t c : DecodeUtf8(morph)) ++counts.chars[c];
    ++counts.end;
  }
  return counts;
}

double LexiconStringCost(const Lexicon& lexicon, const CharCounts& chars) {
  if (lexicon.empty()) return 0.0;
  const double total = static_cast<double>(chars.total());
  if (chars.end <= 0) {
    throw Error(ErrorCode::kInvalidCounts, "end-of-morph count must be positive");
  }
  const double end_bits = std::log2(total / static_cast<double>(chars.end));
  double bits = 0.0;
  for (const auto& [morph, n] : lexicon.morphs()) {
    for (char32_t c : DecodeUtf8(morph)) {
      auto it = chars.chars.find(c);
      if (it == chars.chars.end() || it->second <= 0) {
        throw Error(ErrorCode::kUnknownChar,
                    "character '" + EncodeUtf8(c) + "' of morph '" + morph +
                        "' has no count");
      }
      bits += std::log2(total / static_cast<double>(it->second));
    }
    bits += end_bits;
  }
  return bits;
}

double SpellingCost(std::string_view morph, const CharCounts& chars) {
  const double total = static_cast<double>(chars.total());
  const double unknown_bits = std::log2(total + 1.0);
  double bits = chars.end > 0
                    ? std::log2(total / static_cast<double>(chars.end))
                    : unknown_bits;
  for (char32_t c : DecodeUtf8(morph)) {
    auto it = chars.chars.find(c);
    bits += (it == chars.chars.end() || it->second <= 0)
                ? unknown_bits
                : std::log2(total / static_cast<double>(it->second));
  }
  return bits;
}

}  // namespace morphoseg
