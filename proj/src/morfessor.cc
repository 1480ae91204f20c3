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

#include "morphoseg/morfessor.h"

#include <algorithm>
#include <istream>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "morphoseg/error.h"
#include "morphoseg/rng.h"
#include "morphoseg/utf8.h"

namespace morphoseg {

namespace {

// Each distinct string seen during training is a node. A leaf node is a
// morph; a split node forwards its count to its two halves. The total cost
// only depends on the leaf counts.
class MorfessorTrainer {
 public:
  explicit MorfessorTrainer(const WordList& words) : words_(words) {
    for (const auto& [word, count] : words.entries()) {
      ModifyCount(word, count);
      const auto bounds = CharBoundaries(word);
      for (std::size_t k = 1; k + 1 < bounds.size(); ++k) {
        prefixes_[word.substr(0, bounds[k])].push_back(&word);
        suffixes_[word.substr(bounds[k])].push_back(&word);
      }
    }
  }

  double Cost() const { return prior_.bits() + corpus_.bits(); }

  MorfessorModel Train(const MorfessorOptions& options) {
    MorfessorModel model;
    model.trace.initial_cost = Cost();

    std::vector<const std::string*> order;
    for (const auto& [word, count] : words_.entries()) order.push_back(&word);
    Rng rng(options.seed);
    const double threshold =
        options.epsilon * static_cast<double>(words_.total_types());

    double previous = Cost();
    for (int epoch = 0; epoch < options.max_epochs; ++epoch) {
      rng.Shuffle(order);
      optimized_.clear();
      for (const std::string* word : order) {
        Step(*word, words_.count(*word));
        ++model.trace.resplit_steps;
        model.trace.step_costs.push_back(Cost());
      }
      const double current = Cost();
      model.trace.epoch_costs.push_back(current);
      ++model.trace.epochs;
      if (previous - current < threshold) break;
      previous = current;
    }

    for (const auto& [word, count] : words_.entries()) {
      Segmentation seg;
      seg.word = word;
      Expand(word, seg.morphs);
      for (const auto& m : seg.morphs) model.lexicon.Add(m, count);
      model.analyses.emplace(word, std::move(seg));
    }
    model.words = words_;
    model.cost = MorfessorTotalCost(model);
    return model;
  }

 private:
  struct Node {
    int64_t count = 0;
    std::size_t split = 0;  // byte offset; 0 for a leaf
  };

  void Step(const std::string& word, int64_t count) {
    const double before = Cost();
    journal_.clear();
    journaling_ = true;
    ModifyCount(word, -count);
    ModifyCount(word, count);
    Resplit(word, /*force=*/true);
    journaling_ = false;
    if (Cost() > before + 1e-9 * std::max(1.0, std::abs(before))) UndoTo(0);
  }

  void Resplit(const std::string& key, bool force) {
    if (!force && optimized_.count(key)) return;
    optimized_.insert(key);
    const auto bounds = CharBoundaries(key);
    if (bounds.size() <= 2) return;

    SetSplit(key, 0);
    double best = Cost();
    std::size_t best_split = 0;
    for (std::size_t k = 1; k + 1 < bounds.size(); ++k) {
      const std::size_t mark = journal_.size();
      SplitShared(key, bounds[k]);
      const double cost = Cost();
      if (cost < best - 1e-12) {
        best = cost;
        best_split = bounds[k];
      }
      UndoTo(mark);
    }
    if (best_split != 0) {
      SplitShared(key, best_split);
      Resplit(key.substr(0, best_split), false);
      Resplit(key.substr(best_split), false);
    }
  }

  // Splits `key` and, for a half that becomes a new morph, also tries the
  // same cut in other words sharing that half whose remainder is already a
  // node. Each of those is kept only if it lowers the cost.
  void SplitShared(const std::string& key, std::size_t split) {
    const std::string prefix = key.substr(0, split);
    const std::string suffix = key.substr(split);
    const bool new_prefix = !nodes_.count(prefix);
    const bool new_suffix = !nodes_.count(suffix);
    SetSplit(key, split);
    if (new_prefix) ShareCut(key, prefix, prefixes_, true);
    if (new_suffix) ShareCut(key, suffix, suffixes_, false);
  }

  void ShareCut(const std::string& key, const std::string& half,
                const std::unordered_map<std::string,
                                         std::vector<const std::string*>>& index,
                bool is_prefix) {
    auto it = index.find(half);
    if (it == index.end()) return;
    for (const std::string* other : it->second) {
      // Never touch a node above `key`.
      if (other->find(key) != std::string::npos) continue;
      const std::size_t cut = is_prefix ? half.size() : other->size() - half.size();
      const std::string rest =
          is_prefix ? other->substr(cut) : other->substr(0, cut);
      if (!nodes_.count(rest) || nodes_.at(*other).split == cut) continue;
      const std::size_t mark = journal_.size();
      const double before = Cost();
      SetSplit(*other, cut);
      if (Cost() >= before - 1e-12) UndoTo(mark);
    }
  }

  void UndoTo(std::size_t mark) {
    const bool journaling = journaling_;
    journaling_ = false;
    while (journal_.size() > mark) {
      auto [key, node] = std::move(journal_.back());
      journal_.pop_back();
      SetNode(key, node);
    }
    journaling_ = journaling;
  }

  void SetSplit(const std::string& key, std::size_t split) {
    const Node node = nodes_.at(key);
    if (node.split == split) return;
    ModifyCount(key, -node.count);
    SetNode(key, Node{node.count, split});
    if (split != 0) {
      ModifyCount(key.substr(0, split), node.count);
      ModifyCount(key.substr(split), node.count);
    }
  }

  void ModifyCount(const std::string& key, int64_t delta) {
    auto it = nodes_.find(key);
    const Node old = it == nodes_.end() ? Node{} : it->second;
    Node updated = old;
    updated.count += delta;
    if (updated.count < 0) {
      throw Error(ErrorCode::kInconsistentModel,
                  "negative count for '" + key + "'");
    }
    SetNode(key, updated.count > 0 ? std::optional<Node>(updated)
                                   : std::nullopt);
    if (old.split != 0) {
      ModifyCount(key.substr(0, old.split), delta);
      ModifyCount(key.substr(old.split), delta);
    }
  }

  void SetNode(const std::string& key, std::optional<Node> value) {
    auto it = nodes_.find(key);
    std::optional<Node> old;
    if (it != nodes_.end()) old = it->second;
    if (journaling_) journal_.emplace_back(key, old);
    const int64_t old_leaf = (old && old->split == 0) ? old->count : 0;
    const int64_t new_leaf = (value && value->split == 0) ? value->count : 0;
    if (old_leaf != new_leaf) ChangeMorph(key, old_leaf, new_leaf);
    if (value) {
      nodes_[key] = *value;
    } else if (it != nodes_.end()) {
      nodes_.erase(it);
    }
  }

  void ChangeMorph(const std::string& morph, int64_t old_count,
                   int64_t new_count) {
    corpus_.Change(old_count, new_count);
    if (old_count == 0 && new_count > 0) ChangeType(morph, +1);
    if (old_count > 0 && new_count == 0) ChangeType(morph, -1);
  }

  void ChangeType(const std::string& morph, int sign) {
    for (char32_t c : DecodeUtf8(morph)) {
      int64_t& n = char_counts_[c];
      prior_.Change(n, n + sign);
      n += sign;
    }
    prior_.Change(end_count_, end_count_ + sign);
    end_count_ += sign;
  }

  void Expand(const std::string& key, std::vector<std::string>& out) const {
    const Node& node = nodes_.at(key);
    if (node.split == 0) {
      out.push_back(key);
    } else {
      Expand(key.substr(0, node.split), out);
      Expand(key.substr(node.split), out);
    }
  }

  const WordList& words_;
  std::unordered_map<std::string, Node> nodes_;
  std::unordered_set<std::string> optimized_;
  std::unordered_map<std::string, std::vector<const std::string*>> prefixes_;
  std::unordered_map<std::string, std::vector<const std::string*>> suffixes_;
  std::vector<std::pair<std::string, std::optional<Node>>> journal_;
  bool journaling_ = false;

  CodeLengthAccumulator corpus_;
  CodeLengthAccumulator prior_;
  std::unordered_map<char32_t, int64_t> char_counts_;
  int64_t end_count_ = 0;
};

}  // namespace

CodeLengthReport MorfessorTotalCost(const MorfessorModel& model) {
  if (model.lexicon.empty()) {
    throw Error(ErrorCode::kInconsistentModel, "empty lexicon");
  }
  if (!model.words.empty()) {
    Lexicon recount;
    for (const auto& [word, seg] : model.analyses) {
      const int64_t n = model.words.count(word);
      if (n == 0) {
        throw Error(ErrorCode::kInconsistentModel,
                    "analysis for unknown word '" + word + "'");
      }
      for (const auto& m : seg.morphs) recount.Add(m, n);
    }
    if (model.analyses.size() != model.words.total_types() ||
        !(recount == model.lexicon)) {
      throw Error(ErrorCode::kInconsistentModel,
                  "lexicon counts differ from the analyses");
    }
  } else {
    for (const auto& [word, seg] : model.analyses) {
      for (const auto& m : seg.morphs) {
        if (!model.lexicon.contains(m)) {
          throw Error(ErrorCode::kInconsistentModel,
                      "morph '" + m + "' missing from lexicon");
        }
      }
    }
  }
  std::vector<int64_t> counts;
  for (const auto& [m, n] : model.lexicon.morphs()) counts.push_back(n);
  return CodeLengthReport::FromParts(
      {{"prior_bits",
        LexiconStringCost(model.lexicon, PooledCharCounts(model.lexicon))},
       {"corpus_bits", CodeLengthMultinomial(counts)}});
}

MorfessorModel TrainMorfessor(const WordList& words,
                              const MorfessorOptions& options) {
  if (words.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "empty word list");
  }
  return MorfessorTrainer(words).Train(options);
}

MorfessorDecoder::MorfessorDecoder(std::shared_ptr<const MorfessorModel> model)
    : model_(std::move(model)) {
  const double total = static_cast<double>(model_->lexicon.total_count());
  for (const auto& [m, n] : model_->lexicon.morphs()) {
    morph_cost_.emplace(m, std::log2(total / static_cast<double>(n)));
    max_morph_chars_ = std::max(max_morph_chars_, CharLength(m));
  }
  chars_ = PooledCharCounts(model_->lexicon);
  fallback_penalty_ = std::log2(total + 1.0);
}

double MorfessorDecoder::MorphCost(const std::string& morph) const {
  auto it = morph_cost_.find(morph);
  return it == morph_cost_.end() ? std::numeric_limits<double>::infinity()
                                 : it->second;
}

double MorfessorDecoder::FallbackCost(const std::string& ch) const {
  return SpellingCost(ch, chars_) + fallback_penalty_;
}

Segmentation MorfessorDecoder::Segment(const std::string& word) const {
  if (word.empty()) throw Error(ErrorCode::kEmptyWord, "cannot segment ''");
  auto known = model_->analyses.find(word);
  if (known != model_->analyses.end()) return known->second;

  const auto bounds = CharBoundaries(word);
  const std::size_t n = bounds.size() - 1;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> best(n + 1, kInf);
  std::vector<std::size_t> back(n + 1, 0);
  std::vector<bool> via_fallback(n + 1, false);
  best[0] = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t lo = j > max_morph_chars_ ? j - max_morph_chars_ : 0;
    for (std::size_t i = j; i-- > lo;) {
      if (best[i] == kInf) continue;
      const std::string piece =
          word.substr(bounds[i], bounds[j] - bounds[i]);
      double cost = MorphCost(piece);
      bool fallback = false;
      if (cost == kInf && j - i == 1) {
        cost = FallbackCost(piece);
        fallback = true;
      }
      if (cost == kInf) continue;
      if (best[i] + cost < best[j]) {
        best[j] = best[i] + cost;
        back[j] = i;
        via_fallback[j] = fallback;
      }
    }
  }

  Segmentation seg;
  seg.word = word;
  std::vector<bool> flags;
  for (std::size_t j = n; j > 0; j = back[j]) {
    seg.morphs.push_back(word.substr(bounds[back[j]], bounds[j] - bounds[back[j]]));
    flags.push_back(via_fallback[j]);
  }
  std::reverse(seg.morphs.begin(), seg.morphs.end());
  std::reverse(flags.begin(), flags.end());
  if (std::find(flags.begin(), flags.end(), true) != flags.end()) {
    seg.fallback = std::move(flags);
  }
  return seg;
}

Segmentation SegmentMorfessor(const std::string& word,
                              const MorfessorModel& model) {
  return MorfessorDecoder(std::make_shared<MorfessorModel>(model))
      .Segment(word);
}

MorfessorSegmenter::MorfessorSegmenter(MorfessorModel model)
    : decoder_(std::make_shared<MorfessorDecoder>(
          std::make_shared<MorfessorModel>(std::move(model)))) {}

Segmentation MorfessorSegmenter::Segment(const std::string& word) const {
  if (!decoder_) {
    throw Error(ErrorCode::kNotTrained, "morfessor is not trained");
  }
  return decoder_->Segment(word);
}

std::size_t MorfessorSegmenter::inventory_size() const {
  return decoder_ ? decoder_->model().lexicon.size() : 0;
}

int64_t MorfessorSegmenter::optimizer_steps() const {
  return decoder_ ? decoder_->model().trace.resplit_steps : 0;
}

void WriteMorfessorModel(std::ostream& out, const MorfessorModel& model) {
  out << "#morphoseg-morfessor v1\n";
  WriteLexicon(out, model.lexicon);
  out << "#analyses\n";
  for (const auto& [word, seg] : model.analyses) {
    out << word << '\t';
    for (std::size_t i = 0; i < seg.morphs.size(); ++i) {
      if (i) out << ' ';
      out << seg.morphs[i];
    }
    out << '\n';
  }
}

MorfessorModel ReadMorfessorModel(std::istream& in,
                                  const std::string& source_id) {
  std::string line;
  if (!std::getline(in, line) || line != "#morphoseg-morfessor v1") {
    throw ParseError(source_id, 1, "expected header '#morphoseg-morfessor v1'");
  }
  std::ostringstream lexicon_text;
  std::size_t line_no = 1;
  bool in_analyses = false;
  MorfessorModel model;
  std::size_t lexicon_first_line = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (!in_analyses) {
      if (line == "#analyses") {
        in_analyses = true;
        std::istringstream lexicon_in(lexicon_text.str());
        try {
          model.lexicon = ReadLexicon(lexicon_in, source_id);
        } catch (const ParseError& e) {
          throw ParseError(source_id, lexicon_first_line + e.line() - 1,
                           "bad lexicon entry");
        }
      } else {
        lexicon_text << line << '\n';
      }
      continue;
    }
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw ParseError(source_id, line_no, "expected word<TAB>morphs");
    }
    Segmentation seg;
    seg.word = line.substr(0, tab);
    std::istringstream morphs(line.substr(tab + 1));
    std::string m;
    while (morphs >> m) seg.morphs.push_back(m);
    try {
      seg.Validate();
    } catch (const Error& e) {
      throw ParseError(source_id, line_no, e.what());
    }
    model.analyses.emplace(seg.word, std::move(seg));
  }
  if (!in_analyses) {
    throw ParseError(source_id, line_no, "missing '#analyses' section");
  }
  try {
    model.cost = MorfessorTotalCost(model);
  } catch (const Error& e) {
    throw ParseError(source_id, line_no, e.what());
  }
  return model;
}

}  // namespace morphoseg
