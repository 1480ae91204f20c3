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

#ifndef MORPHOSEG_SEGMENTER_H_
#define MORPHOSEG_SEGMENTER_H_

#include <cstdint>
#include <set>
#include <string>

#include "morphoseg/corpus.h"
#include "morphoseg/lexicon.h"

namespace morphoseg {

// Common surface of every trained segmenter. Segment() receives a case
// folded, non-empty word and must return morphs that concatenate to it.
class Segmenter {
 public:
  virtual ~Segmenter() = default;

  virtual std::string kind() const = 0;
  virtual bool trained() const = 0;
  virtual Segmentation Segment(const std::string& word) const = 0;

  // Number of distinct units the segmenter can emit for in-alphabet input;
  // this is the size matched across segmenters in a comparison.
  virtual std::size_t inventory_size() const = 0;

  // Training effort: merges, resplit steps or annealing proposals.
  virtual int64_t optimizer_steps() const { return 0; }
};

// Character baseline: every code point is its own unit.
class CharSegmenter : public Segmenter {
 public:
  CharSegmenter() = default;
  explicit CharSegmenter(const WordList& words);

  std::string kind() const override { return "char"; }
  bool trained() const override { return trained_; }
  Segmentation Segment(const std::string& word) const override;
  std::size_t inventory_size() const override { return alphabet_.size(); }

 private:
  std::set<std::string> alphabet_;
  bool trained_ = false;
};

}  // namespace morphoseg

#endif  // MORPHOSEG_SEGMENTER_H_
