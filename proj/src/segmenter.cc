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

#include "morphoseg/segmenter.h"

#include "morphoseg/error.h"
#include "morphoseg/utf8.h"

namespace morphoseg {

CharSegmenter::CharSegmenter(const WordList& words) : trained_(true) {
  for (const auto& [word, count] : words.entries()) {
    for (auto& c : SplitChars(word)) alphabet_.insert(std::move(c));
  }
}

Segmentation CharSegmenter::Segment(const std::string& word) const {
  if (word.empty()) throw Error(ErrorCode::kEmptyWord, "cannot segment ''");
  Segmentation seg;
  seg.word = word;
  seg.morphs = SplitChars(word);
  bool any_unknown = false;
  std::vector<bool> unknown;
  for (const auto& c : seg.morphs) {
    unknown.push_back(!alphabet_.count(c));
    any_unknown = any_unknown || unknown.back();
  }
  if (any_unknown) seg.fallback = std::move(unknown);
  return seg;
}

}  // namespace morphoseg
