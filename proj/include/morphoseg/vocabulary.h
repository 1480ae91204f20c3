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

#ifndef MORPHOSEG_VOCABULARY_H_
#define MORPHOSEG_VOCABULARY_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "morphoseg/corpus.h"
#include "morphoseg/lexicon.h"
#include "morphoseg/segmenter.h"

namespace morphoseg {

// U+2581, the word-initial marker.
inline constexpr std::string_view kWordInitialMarker = "\xe2\x96\x81";
inline constexpr std::string_view kUnknownToken = "<unk>";
inline constexpr std::string_view kPaddingToken = "<pad>";
// U+2047, how an unknown id is rendered by Decode().
inline constexpr std::string_view kUnknownGlyph = "\xe2\x81\x87";

using IdSequences = std::vector<std::vector<int>>;

// Projects the morph boundaries of a lowercase segmentation onto the
// original-case spelling of the word. Throws kCaseFoldMismatch unless
// FoldCase(original) == seg.word.
Segmentation RestoreCase(const Segmentation& seg, const std::string& original);

// Prefixes the first morph with the marker.
std::vector<std::string> MarkWordInitial(const std::vector<std::string>& morphs,
                                         std::string_view marker =
                                             kWordInitialMarker);

// Token inventory: specials first (<unk> = 0, <pad> = 1), then tokens by
// descending corpus frequency, ties in code point order.
class Vocabulary {
 public:
  Vocabulary() = default;
  // `tokens` must start with the two specials and contain no duplicates.
  explicit Vocabulary(std::vector<std::string> tokens,
                      std::string marker = std::string(kWordInitialMarker));

  static constexpr int kUnkId = 0;
  static constexpr int kPadId = 1;

  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::vector<std::string> specials() const;
  const std::string& marker() const { return marker_; }

  // -1 if absent.
  int id(const std::string& token) const;
  // Throws kInvalidId when out of range.
  const std::string& token(int id) const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
  std::string marker_;
};

// Surface word -> lowercase segmentation -> restored case -> marked tokens.
std::vector<std::string> TokenizeWord(const std::string& surface,
                                      const Segmenter& segmenter,
                                      std::string_view marker =
                                          kWordInitialMarker);

// Throws kNotTrained for an untrained segmenter.
Vocabulary AssembleVocabulary(const SentenceStream& corpus,
                              const Segmenter& segmenter,
                              std::string_view marker = kWordInitialMarker);

// Tokens missing from the vocabulary map to <unk>.
IdSequences Encode(const SentenceStream& text, const Vocabulary& vocab,
                   const Segmenter& segmenter);

// A marked token starts a new word; <pad> is skipped. Throws kInvalidId for
// out-of-range ids and kEmptySentence for sentences without words.
SentenceStream Decode(const IdSequences& ids, const Vocabulary& vocab);

// One token per line; the line number is the id.
void WriteVocabulary(std::ostream& out, const Vocabulary& vocab);
Vocabulary ReadVocabulary(std::istream& in, const std::string& source_id,
                          std::string marker = std::string(kWordInitialMarker));

// One sentence per line, space-separated ids.
void WriteIds(std::ostream& out, const IdSequences& ids);
IdSequences ReadIds(std::istream& in, const std::string& source_id);

}  // namespace morphoseg

#endif  // MORPHOSEG_VOCABULARY_H_
