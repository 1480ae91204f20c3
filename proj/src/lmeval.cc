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

#include "morphoseg/lmeval.h"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>

#include "json.hpp"
#include "morphoseg/error.h"

namespace morphoseg {

namespace {

std::vector<int> ContextAt(const std::vector<int>& sentence, std::size_t pos,
                           int order) {
  std::vector<int> context(order - 1, kBosId);
  for (int k = 1; k < order; ++k) {
    if (pos >= static_cast<std::size_t>(k)) {
      context[order - 1 - k] = sentence[pos - k];
    }
  }
  return context;
}

std::set<std::size_t> InternalBoundaries(const Segmentation& seg) {
  const auto cuts = seg.Boundaries();
  return {cuts.begin(), cuts.end()};
}

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

double NgramLm::Log2Prob(const std::vector<int>& context, int token) const {
  double c = 0.0;
  double total = 0.0;
  auto it = counts.find(context);
  if (it != counts.end()) {
    auto jt = it->second.find(token);
    if (jt != it->second.end()) c = static_cast<double>(jt->second);
    total = static_cast<double>(context_totals.at(context));
  }
  return std::log2((c + delta) /
                   (total + delta * static_cast<double>(vocab.size())));
}

NgramLm TrainNgram(const IdSequences& ids, const Vocabulary& vocab, int order,
                   double delta) {
  if (order < 1) throw Error(ErrorCode::kInvalidArgument, "order must be >= 1");
  if (!(delta > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "delta must be > 0");
  }
  if (ids.empty()) throw Error(ErrorCode::kInvalidArgument, "no training ids");
  NgramLm lm;
  lm.order = order;
  lm.delta = delta;
  lm.vocab = vocab;
  for (const auto& sentence : ids) {
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      vocab.token(sentence[i]);  // range check
      const auto context = ContextAt(sentence, i, order);
      ++lm.counts[context][sentence[i]];
      ++lm.context_totals[context];
    }
  }
  return lm;
}

PerplexityReport Perplexity(const NgramLm& lm, const IdSequences& ids,
                            const std::vector<int64_t>& words_per_sentence) {
  PerplexityReport report;
  int64_t unknown = 0;
  for (const auto& sentence : ids) {
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      lm.vocab.token(sentence[i]);
      report.log2_prob += lm.Log2Prob(ContextAt(sentence, i, lm.order), sentence[i]);
      if (sentence[i] == Vocabulary::kUnkId) ++unknown;
      ++report.token_count;
    }
  }
  for (int64_t w : words_per_sentence) report.word_count += w;
  if (report.token_count == 0 || report.word_count <= 0) {
    throw Error(ErrorCode::kEmptyEval, "nothing to evaluate");
  }
  report.per_token_ppl =
      std::exp2(-report.log2_prob / static_cast<double>(report.token_count));
  report.per_word_ppl =
      std::exp2(-report.log2_prob / static_cast<double>(report.word_count));
  report.oov_rate =
      static_cast<double>(unknown) / static_cast<double>(report.token_count);
  return report;
}

BoundaryScore ScoreBoundaries(const std::vector<Segmentation>& predicted,
                              const std::vector<Segmentation>& gold) {
  if (predicted.size() != gold.size()) {
    throw Error(ErrorCode::kAlignmentError, "segmentation lists differ in length");
  }
  BoundaryScore score;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i].word != gold[i].word) {
      throw Error(ErrorCode::kAlignmentError,
                  "word mismatch at " + std::to_string(i) + ": '" +
                      predicted[i].word + "' vs '" + gold[i].word + "'");
    }
    const auto p = InternalBoundaries(predicted[i]);
    const auto g = InternalBoundaries(gold[i]);
    for (std::size_t b : p) score.true_positives += g.count(b);
    score.predicted += static_cast<int64_t>(p.size());
    score.gold += static_cast<int64_t>(g.size());
  }
  const double tp = static_cast<double>(score.true_positives);
  score.precision = score.predicted ? tp / score.predicted : 0.0;
  score.recall = score.gold ? tp / score.gold : 0.0;
  const double sum = score.precision + score.recall;
  score.f1 = sum > 0.0 ? 2.0 * score.precision * score.recall / sum : 0.0;
  return score;
}

std::vector<ComparisonRow> CompareSegmenters(
    const SentenceStream& train, const SentenceStream& valid,
    const std::vector<NamedSegmenter>& segmenters, int order, double delta) {
  if (segmenters.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "compare needs >= 2 segmenters");
  }
  std::vector<int64_t> words_per_sentence;
  for (const auto& sentence : valid.sentences) {
    words_per_sentence.push_back(static_cast<int64_t>(sentence.size()));
  }
  std::vector<ComparisonRow> rows;
  for (const auto& [name, segmenter] : segmenters) {
    if (!segmenter || !segmenter->trained()) {
      throw Error(ErrorCode::kNotTrained, "segmenter '" + name + "' is not trained");
    }
    const Vocabulary vocab = AssembleVocabulary(train, *segmenter);
    const NgramLm lm = TrainNgram(Encode(train, vocab, *segmenter), vocab,
                                  order, delta);
    const PerplexityReport report =
        Perplexity(lm, Encode(valid, vocab, *segmenter), words_per_sentence);
    rows.push_back({name, segmenter->inventory_size(), report.per_token_ppl,
                    report.per_word_ppl, report.oov_rate,
                    segmenter->optimizer_steps()});
  }
  return rows;
}

void WriteComparisonTsv(std::ostream& out,
                        const std::vector<ComparisonRow>& rows) {
  out << "segmenter\tvocab_size\tper_token_ppl\tper_word_ppl\toov_rate\t"
         "optimizer_steps\n";
  for (const auto& r : rows) {
    out << r.segmenter << '\t' << r.vocab_size << '\t'
        << FormatDouble(r.per_token_ppl) << '\t' << FormatDouble(r.per_word_ppl)
        << '\t' << FormatDouble(r.oov_rate) << '\t' << r.optimizer_steps << '\n';
  }
}

void WriteComparisonJson(std::ostream& out,
                         const std::vector<ComparisonRow>& rows) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    doc.push_back({{"segmenter", r.segmenter},
                   {"vocab_size", r.vocab_size},
                   {"per_token_ppl", r.per_token_ppl},
                   {"per_word_ppl", r.per_word_ppl},
                   {"oov_rate", r.oov_rate},
                   {"optimizer_steps", r.optimizer_steps}});
  }
  out << doc.dump(2) << '\n';
}

}  // namespace morphoseg
