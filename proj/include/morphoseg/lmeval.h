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

#ifndef MORPHOSEG_LMEVAL_H_
#define MORPHOSEG_LMEVAL_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "morphoseg/corpus.h"
#include "morphoseg/lexicon.h"
#include "morphoseg/segmenter.h"
#include "morphoseg/vocabulary.h"

namespace morphoseg {

// Context padding id used before the first token of a sentence.
inline constexpr int kBosId = -1;

// Add-delta n-gram model over vocabulary ids. Contexts are the order - 1
// preceding ids, padded with kBosId; the end of a sentence is not predicted.
struct NgramLm {
  int order = 1;
  double delta = 0.1;
  Vocabulary vocab;
  std::map<std::vector<int>, std::map<int, int64_t>> counts;
  std::map<std::vector<int>, int64_t> context_totals;

  // log2 of (c(context, token) + delta) / (c(context) + delta * |V|).
  double Log2Prob(const std::vector<int>& context, int token) const;
};

// Throws kInvalidArgument for order < 1, delta <= 0 or no ids, and
// kInvalidId for ids outside the vocabulary.
NgramLm TrainNgram(const IdSequences& ids, const Vocabulary& vocab, int order,
                   double delta);

struct PerplexityReport {
  double per_token_ppl = 0.0;
  double per_word_ppl = 0.0;
  int64_t token_count = 0;
  int64_t word_count = 0;
  double oov_rate = 0.0;
  double log2_prob = 0.0;
};

// per_word_ppl normalizes the same log-probability by the number of words
// so that models with different token inventories are comparable. Throws
// kEmptyEval when there are no tokens or no words.
PerplexityReport Perplexity(const NgramLm& lm, const IdSequences& ids,
                            const std::vector<int64_t>& words_per_sentence);

struct BoundaryScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  int64_t true_positives = 0;
  int64_t predicted = 0;
  int64_t gold = 0;
};

// Micro-averaged over internal boundaries; 0/0 counts as 0. Throws
// kAlignmentError when the lists differ in length or words.
BoundaryScore ScoreBoundaries(const std::vector<Segmentation>& predicted,
                              const std::vector<Segmentation>& gold);

struct NamedSegmenter {
  std::string name;
  std::shared_ptr<const Segmenter> segmenter;
};

struct ComparisonRow {
  std::string segmenter;
  std::size_t vocab_size = 0;  // segmenter inventory size
  double per_token_ppl = 0.0;
  double per_word_ppl = 0.0;
  double oov_rate = 0.0;
  int64_t optimizer_steps = 0;

  friend bool operator==(const ComparisonRow&, const ComparisonRow&) = default;
};

// For each segmenter: build the vocabulary on `train`, fit the LM on the
// encoded train split and score the encoded valid split. Rows follow the
// input order. Needs at least two segmenters.
std::vector<ComparisonRow> CompareSegmenters(
    const SentenceStream& train, const SentenceStream& valid,
    const std::vector<NamedSegmenter>& segmenters, int order = 2,
    double delta = 0.1);

void WriteComparisonTsv(std::ostream& out,
                        const std::vector<ComparisonRow>& rows);
void WriteComparisonJson(std::ostream& out,
                         const std::vector<ComparisonRow>& rows);

}  // namespace morphoseg

#endif  // MORPHOSEG_LMEVAL_H_
