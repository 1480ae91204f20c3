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

#include "morphoseg/lexicon.h"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

#include "morphoseg/error.h"
#include "morphoseg/utf8.h"

namespace morphoseg {

void Lexicon::Add(const std::string& morph, int64_t count) {
  if (morph.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty morph");
  }
  if (count <= 0) {
    throw Error(ErrorCode::kInvalidCounts,
                "non-positive count for morph '" + morph + "'");
  }
  morphs_[morph] += count;
}

int64_t Lexicon::count(const std::string& morph) const {
  auto it = morphs_.find(morph);
  return it == morphs_.end() ? 0 : it->second;
}

int64_t Lexicon::total_count() const {
  int64_t total = 0;
  for (const auto& [morph, count] : morphs_) total += count;
  return total;
}

std::vector<std::pair<std::string, int64_t>> Lexicon::Sorted() const {
  std::vector<std::pair<std::string, int64_t>> out(morphs_.begin(),
                                                   morphs_.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;
  });
  return out;
}

void Segmentation::Validate() const {
  if (morphs.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "segmentation has no morphs");
  }
  std::string joined;
  for (const auto& m : morphs) {
    if (m.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "empty morph in segmentation of '" + word + "'");
    }
    joined += m;
  }
  if (joined != word) {
    throw Error(ErrorCode::kInvalidArgument,
                "morphs of '" + word + "' concatenate to '" + joined + "'");
  }
  if (!states.empty() && states.size() != morphs.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "state list misaligned for '" + word + "'");
  }
  if (!fallback.empty() && fallback.size() != morphs.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "fallback flags misaligned for '" + word + "'");
  }
}

std::vector<std::size_t> Segmentation::Boundaries() const {
  std::vector<std::size_t> out;
  std::size_t offset = 0;
  for (std::size_t i = 0; i + 1 < morphs.size(); ++i) {
    offset += CharLength(morphs[i]);
    out.push_back(offset);
  }
  return out;
}

Segmentation MakeSegmentation(const std::string& word,
                              std::vector<std::string> morphs,
                              std::vector<int> states) {
  Segmentation seg{word, std::move(morphs), std::move(states), {}};
  seg.Validate();
  return seg;
}

Lexicon PruneLexicon(const Lexicon& lexicon, std::size_t target_size) {
  if (target_size == 0) {
    throw Error(ErrorCode::kInvalidArgument, "prune target must be >= 1");
  }
  if (target_size >= lexicon.size()) return lexicon;
  const auto ranked = lexicon.Sorted();
  Lexicon pruned;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const auto& [morph, count] = ranked[i];
    if (i < target_size || CharLength(morph) == 1) pruned.Add(morph, count);
  }
  return pruned;
}

std::size_t MatchVocabSize(const Lexicon& reference) {
  if (reference.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "reference lexicon is empty");
  }
  return reference.size();
}

void WriteLexicon(std::ostream& out, const Lexicon& lexicon) {
  for (const auto& [morph, count] : lexicon.Sorted()) {
    out << morph << '\t' << count << '\n';
  }
}

Lexicon ReadLexicon(std::istream& in, const std::string& source_id) {
  Lexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw ParseError(source_id, line_no, "expected morph<TAB>count");
    }
    int64_t count = 0;
    const char* first = line.data() + tab + 1;
    const char* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, count);
    if (ec != std::errc() || ptr != last || count <= 0) {
      throw ParseError(source_id, line_no, "bad count");
    }
    const std::string morph = line.substr(0, tab);
    if (!IsValidUtf8(morph)) {
      throw ParseError(source_id, line_no, "ill-formed UTF-8");
    }
    lexicon.Add(morph, count);
  }
  return lexicon;
}

}  // namespace morphoseg
