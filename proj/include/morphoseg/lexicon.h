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

#ifndef MORPHOSEG_LEXICON_H_
#define MORPHOSEG_LEXICON_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace morphoseg {

// Morph inventory with counts; the unit of vocabulary-size matching and
// pruning.
class Lexicon {
 public:
  Lexicon() = default;

  // Adds to the count of `morph`. Morph must be non-empty, count positive.
  void Add(const std::string& morph, int64_t count = 1);

  const std::map<std::string, int64_t>& morphs() const { return morphs_; }
  std::size_t size() const { return morphs_.size(); }
  bool empty() const { return morphs_.empty(); }
  bool contains(const std::string& morph) const {
    return morphs_.count(morph) != 0;
  }
  int64_t count(const std::string& morph) const;
  int64_t total_count() const;

  // Descending count, then code point order.
  std::vector<std::pair<std::string, int64_t>> Sorted() const;

  friend bool operator==(const Lexicon&, const Lexicon&) = default;

 private:
  std::map<std::string, int64_t> morphs_;
};

// A word split into an ordered morph sequence. `states` is either empty or
// aligned 1:1 with `morphs`; `fallback`, when non-empty, marks morphs that a
// decoder emitted outside its lexicon (unknown characters).
struct Segmentation {
  std::string word;
  std::vector<std::string> morphs;
  std::vector<int> states;
  std::vector<bool> fallback;

  bool has_states() const { return !states.empty(); }

  // Throws kInvalidArgument if any structural invariant is broken.
  void Validate() const;

  // Code point offsets of the internal morph boundaries.
  std::vector<std::size_t> Boundaries() const;

  friend bool operator==(const Segmentation&, const Segmentation&) = default;
};

Segmentation MakeSegmentation(const std::string& word,
                              std::vector<std::string> morphs,
                              std::vector<int> states = {});

// Keeps the `target_size` most frequent morphs (ties by code point order)
// plus every single-character morph of the input, so any word over the
// input alphabet stays segmentable. Counts of survivors are unchanged.
Lexicon PruneLexicon(const Lexicon& lexicon, std::size_t target_size);

// Lexicon size a BPE model must be trained to for a size-matched comparison.
std::size_t MatchVocabSize(const Lexicon& reference);

// `morph<TAB>count`, descending count then code point order.
void WriteLexicon(std::ostream& out, const Lexicon& lexicon);
Lexicon ReadLexicon(std::istream& in, const std::string& source_id);

}  // namespace morphoseg

#endif  // MORPHOSEG_LEXICON_H_
