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

#ifndef MORPHOSEG_MORFESSOR_H_
#define MORPHOSEG_MORFESSOR_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "morphoseg/corpus.h"
#include "morphoseg/lexicon.h"
#include "morphoseg/mdl.h"
#include "morphoseg/segmenter.h"

namespace morphoseg {

struct MorfessorOptions {
  // Training stops once an epoch improves the total cost by less than
  // epsilon bits per word type.
  double epsilon = 0.1;
  uint64_t seed = 0;
  int max_epochs = 100;
};

struct MorfessorTrace {
  int epochs = 0;
  int64_t resplit_steps = 0;
  double initial_cost = 0.0;
  std::vector<double> epoch_costs;  // after each epoch
  std::vector<double> step_costs;   // after each committed word step
};

struct MorfessorModel {
  Lexicon lexicon;
  std::map<std::string, Segmentation> analyses;
  // Training word list. Empty for models read from disk.
  WordList words;
  CodeLengthReport cost;  // parts: prior_bits, corpus_bits
  MorfessorTrace trace;
};

// prior_bits: LexiconStringCost of the lexicon under its own pooled
// character counts. corpus_bits: CodeLengthMultinomial of the morph token
// counts. Throws kInconsistentModel if the lexicon is not the recount of
// the analyses (checked when the model carries its word list).
CodeLengthReport MorfessorTotalCost(const MorfessorModel& model);

// Baseline recursive splitting over word types in seed-shuffled order. A
// word step that would raise the total cost is rolled back.
MorfessorModel TrainMorfessor(const WordList& words,
                              const MorfessorOptions& options = {});

// Minimum-cost segmentation over a trained lexicon.
class MorfessorDecoder {
 public:
  explicit MorfessorDecoder(std::shared_ptr<const MorfessorModel> model);

  // Training words return their stored analysis; other words are decoded by
  // dynamic programming where a lexicon morph costs -log2 p(morph) and a
  // character outside the lexicon costs its spelling plus log2(N + 1).
  Segmentation Segment(const std::string& word) const;

  double MorphCost(const std::string& morph) const;
  double FallbackCost(const std::string& ch) const;

  const MorfessorModel& model() const { return *model_; }

 private:
  std::shared_ptr<const MorfessorModel> model_;
  std::unordered_map<std::string, double> morph_cost_;
  CharCounts chars_;
  double fallback_penalty_ = 0.0;
  std::size_t max_morph_chars_ = 1;
};

Segmentation SegmentMorfessor(const std::string& word,
                              const MorfessorModel& model);

class MorfessorSegmenter : public Segmenter {
 public:
  MorfessorSegmenter() = default;
  explicit MorfessorSegmenter(MorfessorModel model);

  std::string kind() const override { return "morfessor"; }
  bool trained() const override { return decoder_ != nullptr; }
  Segmentation Segment(const std::string& word) const override;
  std::size_t inventory_size() const override;
  int64_t optimizer_steps() const override;

  const MorfessorModel& model() const { return decoder_->model(); }

 private:
  std::shared_ptr<const MorfessorDecoder> decoder_;
};

// Header `#morphoseg-morfessor v1`, the lexicon TSV, a `#analyses` line,
// then `word<TAB>morph1 morph2 ...`.
void WriteMorfessorModel(std::ostream& out, const MorfessorModel& model);
MorfessorModel ReadMorfessorModel(std::istream& in,
                                  const std::string& source_id);

}  // namespace morphoseg

#endif  // MORPHOSEG_MORFESSOR_H_
