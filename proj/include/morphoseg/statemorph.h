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

#ifndef MORPHOSEG_STATEMORPH_H_
#define MORPHOSEG_STATEMORPH_H_

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

// K morph-emitting states plus two pseudo-states: index K is the initial
// state and K + 1 the final state. Every analyzed word is a path
// initial -> s1 -> ... -> sn -> final emitting one morph per real state.
struct StateNetwork {
  int num_states = 0;
  std::vector<std::vector<int64_t>> transitions;          // (K+2) x (K+2)
  std::vector<std::map<std::string, int64_t>> emissions;  // K
  Lexicon lexicon;  // morph counts summed over states
  bool pruned = false;

  int initial_state() const { return num_states; }
  int final_state() const { return num_states + 1; }

  // Flow conservation: per state, emissions == incoming transitions ==
  // outgoing transitions; initial row sum == final column sum; no arcs into
  // the initial state or out of the final state. Throws
  // kInconsistentNetwork. Pruned networks only get the shape checks.
  void Validate() const;
};

// Analyses are state-tagged segmentations keyed by word.
using StateAnalyses = std::map<std::string, Segmentation>;

struct SmCost {
  double lexicon_bits = 0.0;
  double transition_bits = 0.0;
  double emission_bits = 0.0;
  double corpus_bits = 0.0;
  double total_bits = 0.0;
};

struct AnnealSchedule {
  double t_initial = 10.0;
  double alpha = 0.99;
  double t_min = 0.01;
  // 0 selects the number of word types.
  int64_t proposals_per_temp = 0;
  uint64_t seed = 0;
  // Hard stop on the number of temperature levels.
  int64_t max_levels = 100000;

  // Requires t_initial >= t_min > 0 and 0 < alpha < 1.
  void Validate() const;
};

struct AnnealLevel {
  double temperature = 0.0;
  double cost = 0.0;       // current cost at the end of the level
  double best_cost = 0.0;  // best seen so far
  int64_t accepted = 0;
};

struct StateMorphTrace {
  double initial_cost = 0.0;
  int64_t proposals = 0;
  int64_t accepted = 0;
  std::vector<AnnealLevel> levels;
};

struct StateMorphModel {
  StateNetwork network;
  StateAnalyses analyses;
  SmCost cost;
  StateMorphTrace trace;
};

// Counts of the network induced by `analyses` weighted by word counts.
// Every word of `words` needs an analysis with states in [0, K).
StateNetwork BuildStateNetwork(int num_states, const StateAnalyses& analyses,
                               const WordList& words);

// lexicon_bits: LexiconStringCost under the lexicon's pooled characters.
// transition_bits / emission_bits: CodeLengthMultinomial of each transition
// row and each state's emission counts. corpus_bits: sum over word tokens of
// -log2 p(transition) - log2 p(emission) with ML estimates. Throws
// kInconsistentNetwork if the network counts differ from the analyses.
SmCost SmTotalCost(const StateNetwork& network, const StateAnalyses& analyses,
                   const WordList& words);

// Simulated annealing over state-tagged analyses; see AnnealSchedule.
// Returns the best configuration visited.
StateMorphModel TrainStateMorph(const WordList& words, int num_states,
                                const AnnealSchedule& schedule);

// Minimum-cost path decoding with add-delta smoothing of transitions and
// emissions. Characters outside the lexicon are emitted one at a time for
// their spelling cost plus log2(total morph tokens + 1).
class StateMorphDecoder {
 public:
  explicit StateMorphDecoder(StateNetwork network, double delta = 0.5);

  Segmentation Segment(const std::string& word) const;

  double TransitionCost(int from, int to) const;
  // +inf for morphs outside the lexicon.
  double EmissionCost(int state, const std::string& morph) const;
  double FallbackCost(const std::string& ch) const;
  // Cost of a state-tagged segmentation under the decoder's arc costs.
  double PathCost(const Segmentation& seg) const;

  const StateNetwork& network() const { return network_; }

 private:
  StateNetwork network_;
  double delta_;
  std::unordered_map<std::string, std::vector<int64_t>> emission_;
  std::vector<int64_t> state_totals_;
  std::vector<int64_t> row_totals_;
  CharCounts chars_;
  double fallback_penalty_ = 0.0;
  std::size_t max_morph_chars_ = 1;
};

Segmentation ViterbiSegment(const std::string& word,
                            const StateNetwork& network);

// Drops the least frequent morphs (PruneLexicon on cross-state counts) and
// their emission entries; transition counts are kept as they are.
StateNetwork PruneStateMorph(const StateNetwork& network,
                             std::size_t target_size);

class StateMorphSegmenter : public Segmenter {
 public:
  StateMorphSegmenter() = default;
  explicit StateMorphSegmenter(StateNetwork network, int64_t steps = 0);

  std::string kind() const override {
    return decoder_ && decoder_->network().pruned ? "statemorph-pruned"
                                                  : "statemorph";
  }
  bool trained() const override { return decoder_ != nullptr; }
  Segmentation Segment(const std::string& word) const override;
  std::size_t inventory_size() const override;
  int64_t optimizer_steps() const override { return steps_; }

 private:
  std::shared_ptr<const StateMorphDecoder> decoder_;
  int64_t steps_ = 0;
};

// Header `#morphoseg-statemorph v1`, K, the (K+2)x(K+2) transition matrix
// one row per line, then per state a `#state <s>` line and its emission TSV.
void WriteStateNetwork(std::ostream& out, const StateNetwork& network);
StateNetwork ReadStateNetwork(std::istream& in, const std::string& source_id);

}  // namespace morphoseg

#endif  // MORPHOSEG_STATEMORPH_H_
