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

#ifndef MORPHOSEG_CORPUS_H_
#define MORPHOSEG_CORPUS_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace morphoseg {

// Frequency map from lowercased word types to corpus counts. This is the one
// training input shared by every segmenter.
class WordList {
 public:
  WordList() = default;

  // Adds `count` occurrences of `word`. The word must be non-empty, contain
  // no whitespace and already be case folded; count must be positive.
  void Add(const std::string& word, int64_t count = 1);

  const std::map<std::string, int64_t>& entries() const { return entries_; }
  int64_t total_tokens() const { return total_tokens_; }
  std::size_t total_types() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  int64_t count(const std::string& word) const;

  // Descending count, then code point order.
  std::vector<std::pair<std::string, int64_t>> Sorted() const;

  friend bool operator==(const WordList&, const WordList&) = default;

 private:
  std::map<std::string, int64_t> entries_;
  int64_t total_tokens_ = 0;
};

// Ordered sentences of original-case surface words.
struct SentenceStream {
  std::vector<std::vector<std::string>> sentences;
  std::string source_id;

  std::size_t size() const { return sentences.size(); }
  bool empty() const { return sentences.empty(); }
};

struct CorpusSplit {
  SentenceStream train;
  SentenceStream valid;
  SentenceStream test;
};

// One sentence per line; blank lines are skipped. Throws ParseError on
// ill-formed UTF-8.
SentenceStream ReadSentences(std::istream& in, const std::string& source_id,
                             bool strip_punct = false);
SentenceStream ReadSentencesFile(const std::string& path,
                                 bool strip_punct = false);
void WriteSentences(std::ostream& out, const SentenceStream& stream);

// Lowercases every surface word and counts occurrences. Words seen fewer than
// min_count times are dropped. Throws kEmptyCorpus for an empty stream.
WordList ExtractWordList(const SentenceStream& stream, int64_t min_count = 1);

// Seeded partition of the sentences into train/valid/test. Sizes follow the
// ratios by largest remainder; each part gets at least one sentence.
CorpusSplit SplitCorpus(const SentenceStream& stream,
                        const std::array<double, 3>& ratios, uint64_t seed);

// `word<TAB>count`, descending count then code point order.
void WriteWordList(std::ostream& out, const WordList& words);
WordList ReadWordList(std::istream& in, const std::string& source_id);

}  // namespace morphoseg

#endif  // MORPHOSEG_CORPUS_H_
