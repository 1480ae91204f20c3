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

#include "morphoseg/statemorph.h"

#include <algorithm>
#include <charconv>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "morphoseg/error.h"
#include "morphoseg/rng.h"
#include "morphoseg/utf8.h"

namespace morphoseg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Index drawn with probability proportional to 2^log_weights[i].
std::size_t SampleLog2(const std::vector<double>& log_weights, Rng& rng) {
  const double top = *std::max_element(log_weights.begin(), log_weights.end());
  std::vector<double> weights(log_weights.size());
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    weights[i] = std::exp2(log_weights[i] - top);
    total += weights[i];
  }
  double u = rng.Uniform() * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (u < weights[i]) return i;
    u -= weights[i];
  }
  // Rounding left u just above the total; take the last non-zero entry.
  for (std::size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0.0) return i;
  }
  return 0;
}

double Log2SumExp2(const std::vector<double>& xs) {
  if (xs.empty()) return -kInf;
  const double top = *std::max_element(xs.begin(), xs.end());
  if (top == -kInf) return -kInf;
  double sum = 0.0;
  for (double x : xs) sum += std::exp2(x - top);
  return top + std::log2(sum);
}

// Owns all mutable training state. Counts are kept in flat arrays indexed by
// interned morph ids, and every cost part is a running code length so a
// proposal is scored in O(K) after its counts are applied.
class Annealer {
 public:
  Annealer(const WordList& words, int num_states, const AnnealSchedule& schedule)
      : word_list_(words),
        k_(num_states),
        schedule_(schedule),
        rng_(schedule.seed),
        transitions_(num_states + 2, std::vector<int64_t>(num_states + 2, 0)),
        row_code_(num_states + 2),
        state_code_(num_states) {
    for (const auto& [text, count] : words.entries()) {
      Word w;
      w.text = text;
      w.count = count;
      w.bounds = CharBoundaries(text);
      w.length = static_cast<int>(w.bounds.size()) - 1;
      w.sub.assign((w.length + 1) * (w.length + 1), -1);
      for (int i = 0; i < w.length; ++i) {
        for (int j = i + 1; j <= w.length; ++j) {
          w.sub[i * (w.length + 1) + j] =
              Intern(text.substr(w.bounds[i], w.bounds[j] - w.bounds[i]));
        }
      }
      words_.push_back(std::move(w));
    }
  }

  StateMorphModel Run() {
    StateMorphModel model;
    for (const Word& w : words_) {
      paths_.push_back(RandomPath(w));
      Apply(w, paths_.back(), +1);
    }
    double current = Cost();
    double best = current;
    std::vector<Path> best_paths = paths_;
    model.trace.initial_cost = current;

    const int64_t per_level =
        schedule_.proposals_per_temp > 0
            ? schedule_.proposals_per_temp
            : static_cast<int64_t>(words_.size());
    double temperature = schedule_.t_initial;
    for (int64_t level = 0; level < schedule_.max_levels; ++level) {
      // At or below t_min the search is greedy: only strict improvements.
      const bool frozen = temperature <= schedule_.t_min;
      int64_t accepted = 0;
      for (int64_t p = 0; p < per_level; ++p) {
        const std::size_t idx = rng_.Index(words_.size());
        const Word& w = words_[idx];
        const Path old = paths_[idx];
        Apply(w, old, -1);
        Path proposal = SamplePath(w, temperature);
        ++model.trace.proposals;
        if (proposal == old) {
          Apply(w, old, +1);
          continue;
        }
        Apply(w, proposal, +1);
        const double cost = Cost();
        const double delta = cost - current;
        const bool accept =
            frozen ? delta < -1e-9
                   : (delta <= 0.0 ||
                      rng_.Uniform() < std::exp2(-delta / temperature));
        if (accept) {
          paths_[idx] = std::move(proposal);
          current = cost;
          ++accepted;
          if (current < best - 1e-12) {
            best = current;
            best_paths = paths_;
          }
        } else {
          Apply(w, proposal, -1);
          Apply(w, old, +1);
        }
      }
      model.trace.accepted += accepted;
      model.trace.levels.push_back({temperature, current, best, accepted});
      if (frozen && accepted == 0) break;
      if (!frozen) temperature *= schedule_.alpha;
    }

    for (std::size_t i = 0; i < words_.size(); ++i) {
      Segmentation seg;
      seg.word = words_[i].text;
      for (int m : best_paths[i].morphs) seg.morphs.push_back(morph_text_[m]);
      seg.states = best_paths[i].states;
      model.analyses.emplace(seg.word, std::move(seg));
    }
    model.network = BuildStateNetwork(k_, model.analyses, word_list_);
    model.cost = SmTotalCost(model.network, model.analyses, word_list_);
    return model;
  }

 private:
  struct Word {
    std::string text;
    int64_t count = 0;
    std::vector<std::size_t> bounds;
    int length = 0;
    std::vector<int> sub;  // morph id of chars [i, j) at i * (length + 1) + j
  };

  struct Path {
    std::vector<int> morphs;
    std::vector<int> states;
    bool operator==(const Path&) const = default;
  };

  int Intern(const std::string& morph) {
    auto [it, inserted] =
        morph_ids_.emplace(morph, static_cast<int>(morph_text_.size()));
    if (inserted) {
      morph_text_.push_back(morph);
      morph_chars_.push_back(DecodeUtf8(morph));
      emissions_.emplace_back(k_, 0);
      morph_total_.push_back(0);
    }
    return it->second;
  }

  int Sub(const Word& w, int i, int j) const {
    return w.sub[i * (w.length + 1) + j];
  }

  // Model cost plus data cost. Under ML estimates the data cost of the
  // corpus equals the summed code lengths of the transition rows and the
  // emission tables, so both terms come from the same accumulators.
  double Cost() const {
    double model_bits = 0.0;
    for (const auto& row : row_code_) model_bits += row.bits();
    for (const auto& state : state_code_) model_bits += state.bits();
    return prior_.bits() + 2.0 * model_bits;
  }

  void Apply(const Word& w, const Path& path, int sign) {
    const int64_t delta = sign * w.count;
    int prev = k_;
    for (std::size_t i = 0; i < path.morphs.size(); ++i) {
      ChangeTransition(prev, path.states[i], delta);
      ChangeEmission(path.morphs[i], path.states[i], delta);
      prev = path.states[i];
    }
    ChangeTransition(prev, k_ + 1, delta);
  }

  void ChangeTransition(int from, int to, int64_t delta) {
    int64_t& n = transitions_[from][to];
    row_code_[from].Change(n, n + delta);
    n += delta;
  }

  void ChangeEmission(int morph, int state, int64_t delta) {
    int64_t& n = emissions_[morph][state];
    state_code_[state].Change(n, n + delta);
    n += delta;
    int64_t& total = morph_total_[morph];
    const int64_t before = total;
    total += delta;
    if (before == 0 && total > 0) ChangeType(morph, +1);
    if (before > 0 && total == 0) ChangeType(morph, -1);
  }

  void ChangeType(int morph, int sign) {
    for (char32_t c : morph_chars_[morph]) {
      int64_t& n = char_counts_[c];
      prior_.Change(n, n + sign);
      n += sign;
    }
    prior_.Change(end_count_, end_count_ + sign);
    end_count_ += sign;
    lexicon_size_ += sign;
  }

  double SpellCost(int morph) const {
    const double total = static_cast<double>(prior_.total());
    const double unknown = std::log2(total + 1.0);
    double bits = end_count_ > 0
                      ? std::log2(total / static_cast<double>(end_count_))
                      : unknown;
    for (char32_t c : morph_chars_[morph]) {
      auto it = char_counts_.find(c);
      bits += (it == char_counts_.end() || it->second == 0)
                  ? unknown
                  : std::log2(total / static_cast<double>(it->second));
    }
    return bits;
  }

  Path RandomPath(const Word& w) {
    Path path;
    int start = 0;
    for (int j = 1; j <= w.length; ++j) {
      if (j == w.length || rng_.Uniform() < 0.5) {
        path.morphs.push_back(Sub(w, start, j));
        path.states.push_back(static_cast<int>(rng_.Index(k_)));
        start = j;
      }
    }
    return path;
  }

  double TransitionCost(int from, int to) const {
    const double outcomes = from == k_ ? k_ : k_ + 1;
    return -std::log2(
        (static_cast<double>(transitions_[from][to]) + delta_) /
        (static_cast<double>(row_code_[from].total()) + delta_ * outcomes));
  }

  // Draws a state-tagged segmentation of `w` with probability proportional
  // to 2^(-cost / T), where cost uses add-delta estimates of the current
  // counts and morphs outside the lexicon also pay their spelling.
  Path SamplePath(const Word& w, double temperature) {
    const int n = w.length;
    const int stride = n + 1;
    const double vocab = static_cast<double>(lexicon_size_) + 1.0;

    std::vector<double> emit((n + 1) * stride * k_, -kInf);
    auto emit_at = [&](int i, int j, int s) -> double& {
      return emit[(i * stride + j) * k_ + s];
    };
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        const int m = Sub(w, i, j);
        const double spell = morph_total_[m] == 0 ? SpellCost(m) : 0.0;
        for (int s = 0; s < k_; ++s) {
          const double p =
              (static_cast<double>(emissions_[m][s]) + delta_) /
              (static_cast<double>(state_code_[s].total()) + delta_ * vocab);
          emit_at(i, j, s) = (std::log2(p) - spell) / temperature;
        }
      }
    }
    std::vector<double> trans((k_ + 2) * (k_ + 2), -kInf);
    for (int a = 0; a <= k_; ++a) {
      for (int b = 0; b <= k_ + 1; ++b) {
        if (b == k_ || (a == k_ && b == k_ + 1)) continue;
        trans[a * (k_ + 2) + b] = -TransitionCost(a, b) / temperature;
      }
    }
    auto trans_at = [&](int a, int b) { return trans[a * (k_ + 2) + b]; };

    // forward[j * K + s]: log2 total weight of paths covering [0, j) that
    // end in state s.
    std::vector<double> forward((n + 1) * k_, -kInf);
    std::vector<double> terms;
    for (int j = 1; j <= n; ++j) {
      for (int s = 0; s < k_; ++s) {
        terms.clear();
        for (int i = 0; i < j; ++i) {
          if (i == 0) {
            terms.push_back(trans_at(k_, s) + emit_at(0, j, s));
          } else {
            for (int prev = 0; prev < k_; ++prev) {
              terms.push_back(forward[i * k_ + prev] + trans_at(prev, s) +
                              emit_at(i, j, s));
            }
          }
        }
        forward[j * k_ + s] = Log2SumExp2(terms);
      }
    }

    terms.clear();
    for (int s = 0; s < k_; ++s) {
      terms.push_back(forward[n * k_ + s] + trans_at(s, k_ + 1));
    }
    int state = static_cast<int>(SampleLog2(terms, rng_));

    Path path;
    std::vector<std::pair<int, int>> choices;
    for (int j = n; j > 0;) {
      terms.clear();
      choices.clear();
      for (int i = 0; i < j; ++i) {
        if (i == 0) {
          terms.push_back(trans_at(k_, state) + emit_at(0, j, state));
          choices.emplace_back(0, k_);
        } else {
          for (int prev = 0; prev < k_; ++prev) {
            terms.push_back(forward[i * k_ + prev] + trans_at(prev, state) +
                            emit_at(i, j, state));
            choices.emplace_back(i, prev);
          }
        }
      }
      const auto [i, prev] = choices[SampleLog2(terms, rng_)];
      path.morphs.push_back(Sub(w, i, j));
      path.states.push_back(state);
      j = i;
      state = prev;
    }
    std::reverse(path.morphs.begin(), path.morphs.end());
    std::reverse(path.states.begin(), path.states.end());
    return path;
  }

  const WordList& word_list_;
  const int k_;
  const AnnealSchedule schedule_;
  const double delta_ = 0.5;
  Rng rng_;

  std::vector<Word> words_;
  std::vector<Path> paths_;

  std::unordered_map<std::string, int> morph_ids_;
  std::vector<std::string> morph_text_;
  std::vector<std::u32string> morph_chars_;
  std::vector<std::vector<int64_t>> emissions_;  // [morph][state]
  std::vector<int64_t> morph_total_;

  std::vector<std::vector<int64_t>> transitions_;
  std::vector<CodeLengthAccumulator> row_code_;
  std::vector<CodeLengthAccumulator> state_code_;

  std::unordered_map<char32_t, int64_t> char_counts_;
  int64_t end_count_ = 0;
  int64_t lexicon_size_ = 0;
  CodeLengthAccumulator prior_;
};

void CheckShape(const StateNetwork& net) {
  const int k = net.num_states;
  if (k < 1) {
    throw Error(ErrorCode::kInconsistentNetwork, "network needs K >= 1");
  }
  if (net.transitions.size() != static_cast<std::size_t>(k + 2) ||
      net.emissions.size() != static_cast<std::size_t>(k)) {
    throw Error(ErrorCode::kInconsistentNetwork, "network tables have wrong shape");
  }
  for (const auto& row : net.transitions) {
    if (row.size() != static_cast<std::size_t>(k + 2)) {
      throw Error(ErrorCode::kInconsistentNetwork, "ragged transition matrix");
    }
    for (int64_t n : row) {
      if (n < 0) {
        throw Error(ErrorCode::kInconsistentNetwork, "negative transition count");
      }
    }
  }
}

int64_t RowTotal(const std::vector<int64_t>& row) {
  int64_t t = 0;
  for (int64_t n : row) t += n;
  return t;
}

}  // namespace

void StateNetwork::Validate() const {
  CheckShape(*this);
  const int k = num_states;
  for (int a = 0; a < k + 2; ++a) {
    if (transitions[a][initial_state()] != 0 ||
        transitions[final_state()][a] != 0) {
      throw Error(ErrorCode::kInconsistentNetwork,
                  "arc into the initial state or out of the final state");
    }
  }
  if (transitions[initial_state()][final_state()] != 0) {
    throw Error(ErrorCode::kInconsistentNetwork, "empty path initial -> final");
  }
  Lexicon summed;
  for (const auto& table : emissions) {
    for (const auto& [m, n] : table) summed.Add(m, n);
  }
  if (!(summed == lexicon)) {
    throw Error(ErrorCode::kInconsistentNetwork,
                "lexicon differs from summed emissions");
  }
  if (pruned) return;
  int64_t into_final = 0;
  for (int a = 0; a < k + 2; ++a) into_final += transitions[a][final_state()];
  if (RowTotal(transitions[initial_state()]) != into_final) {
    throw Error(ErrorCode::kInconsistentNetwork,
                "word starts and word ends disagree");
  }
  for (int s = 0; s < k; ++s) {
    int64_t incoming = 0;
    for (int a = 0; a < k + 2; ++a) incoming += transitions[a][s];
    int64_t emitted = 0;
    for (const auto& [m, n] : emissions[s]) emitted += n;
    if (incoming != emitted || RowTotal(transitions[s]) != emitted) {
      throw Error(ErrorCode::kInconsistentNetwork,
                  "flow is not conserved at state " + std::to_string(s));
    }
  }
}

void AnnealSchedule::Validate() const {
  if (!(t_min > 0.0) || !(t_initial >= t_min)) {
    throw Error(ErrorCode::kInvalidArgument,
                "annealing needs t_initial >= t_min > 0");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "annealing alpha must be in (0, 1)");
  }
  if (proposals_per_temp < 0 || max_levels < 1) {
    throw Error(ErrorCode::kInvalidArgument, "bad annealing level sizes");
  }
}

StateNetwork BuildStateNetwork(int num_states, const StateAnalyses& analyses,
                               const WordList& words) {
  if (num_states < 1) {
    throw Error(ErrorCode::kInvalidArgument, "K must be >= 1");
  }
  StateNetwork net;
  net.num_states = num_states;
  net.transitions.assign(num_states + 2,
                         std::vector<int64_t>(num_states + 2, 0));
  net.emissions.resize(num_states);
  if (analyses.size() != words.total_types()) {
    throw Error(ErrorCode::kInconsistentNetwork,
                "analyses do not cover the word list");
  }
  for (const auto& [word, seg] : analyses) {
    const int64_t n = words.count(word);
    if (n == 0 || seg.word != word) {
      throw Error(ErrorCode::kInconsistentNetwork,
                  "analysis for unknown word '" + word + "'");
    }
    seg.Validate();
    if (seg.states.size() != seg.morphs.size()) {
      throw Error(ErrorCode::kInconsistentNetwork,
                  "analysis of '" + word + "' has no states");
    }
    int prev = net.initial_state();
    for (std::size_t i = 0; i < seg.morphs.size(); ++i) {
      const int s = seg.states[i];
      if (s < 0 || s >= num_states) {
        throw Error(ErrorCode::kInconsistentNetwork,
                    "state " + std::to_string(s) + " out of range");
      }
      net.transitions[prev][s] += n;
      net.emissions[s][seg.morphs[i]] += n;
      net.lexicon.Add(seg.morphs[i], n);
      prev = s;
    }
    net.transitions[prev][net.final_state()] += n;
  }
  return net;
}

SmCost SmTotalCost(const StateNetwork& network, const StateAnalyses& analyses,
                   const WordList& words) {
  const StateNetwork recount =
      BuildStateNetwork(network.num_states, analyses, words);
  if (recount.transitions != network.transitions ||
      recount.emissions != network.emissions ||
      !(recount.lexicon == network.lexicon)) {
    throw Error(ErrorCode::kInconsistentNetwork,
                "network counts differ from the analyses");
  }

  SmCost cost;
  cost.lexicon_bits =
      LexiconStringCost(network.lexicon, PooledCharCounts(network.lexicon));

  std::vector<int64_t> row_totals;
  for (const auto& row : network.transitions) {
    std::vector<int64_t> nonzero;
    for (int64_t n : row) {
      if (n > 0) nonzero.push_back(n);
    }
    if (!nonzero.empty()) cost.transition_bits += CodeLengthMultinomial(nonzero);
    row_totals.push_back(RowTotal(row));
  }
  std::vector<int64_t> state_totals;
  for (const auto& table : network.emissions) {
    std::vector<int64_t> counts;
    for (const auto& [m, n] : table) counts.push_back(n);
    if (!counts.empty()) cost.emission_bits += CodeLengthMultinomial(counts);
    state_totals.push_back(RowTotal(counts));
  }

  for (const auto& [word, seg] : analyses) {
    const double n = static_cast<double>(words.count(word));
    int prev = network.initial_state();
    double bits = 0.0;
    for (std::size_t i = 0; i < seg.morphs.size(); ++i) {
      const int s = seg.states[i];
      bits += std::log2(static_cast<double>(row_totals[prev]) /
                        static_cast<double>(network.transitions[prev][s]));
      bits += std::log2(static_cast<double>(state_totals[s]) /
                        static_cast<double>(network.emissions[s].at(seg.morphs[i])));
      prev = s;
    }
    bits += std::log2(
        static_cast<double>(row_totals[prev]) /
        static_cast<double>(network.transitions[prev][network.final_state()]));
    cost.corpus_bits += n * bits;
  }
  cost.total_bits = cost.lexicon_bits + cost.transition_bits +
                    cost.emission_bits + cost.corpus_bits;
  return cost;
}

StateMorphModel TrainStateMorph(const WordList& words, int num_states,
                                const AnnealSchedule& schedule) {
  if (num_states < 1) {
    throw Error(ErrorCode::kInvalidArgument, "K must be >= 1");
  }
  if (words.empty()) throw Error(ErrorCode::kEmptyCorpus, "empty word list");
  schedule.Validate();
  return Annealer(words, num_states, schedule).Run();
}

StateMorphDecoder::StateMorphDecoder(StateNetwork network, double delta)
    : network_(std::move(network)), delta_(delta) {
  network_.Validate();
  if (!(delta_ > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "smoothing delta must be > 0");
  }
  const int k = network_.num_states;
  state_totals_.assign(k, 0);
  for (int s = 0; s < k; ++s) {
    for (const auto& [m, n] : network_.emissions[s]) {
      auto& per_state = emission_[m];
      per_state.resize(k, 0);
      per_state[s] = n;
      state_totals_[s] += n;
    }
  }
  for (const auto& [m, n] : network_.lexicon.morphs()) {
    emission_[m].resize(k, 0);
    max_morph_chars_ = std::max(max_morph_chars_, CharLength(m));
  }
  for (const auto& row : network_.transitions) {
    row_totals_.push_back(RowTotal(row));
  }
  chars_ = PooledCharCounts(network_.lexicon);
  fallback_penalty_ =
      std::log2(static_cast<double>(network_.lexicon.total_count()) + 1.0);
}

double StateMorphDecoder::TransitionCost(int from, int to) const {
  const int k = network_.num_states;
  if (from == network_.final_state() || to == network_.initial_state() ||
      (from == network_.initial_state() && to == network_.final_state())) {
    return kInf;
  }
  const double outcomes = from == network_.initial_state() ? k : k + 1;
  return -std::log2(
      (static_cast<double>(network_.transitions[from][to]) + delta_) /
      (static_cast<double>(row_totals_[from]) + delta_ * outcomes));
}

double StateMorphDecoder::EmissionCost(int state, const std::string& morph) const {
  auto it = emission_.find(morph);
  if (it == emission_.end()) return kInf;
  const double vocab = static_cast<double>(network_.lexicon.size());
  return -std::log2((static_cast<double>(it->second[state]) + delta_) /
                    (static_cast<double>(state_totals_[state]) + delta_ * vocab));
}

double StateMorphDecoder::FallbackCost(const std::string& ch) const {
  return SpellingCost(ch, chars_) + fallback_penalty_;
}

double StateMorphDecoder::PathCost(const Segmentation& seg) const {
  double bits = 0.0;
  int prev = network_.initial_state();
  for (std::size_t i = 0; i < seg.morphs.size(); ++i) {
    const int s = seg.states.at(i);
    bits += TransitionCost(prev, s);
    const double emit = EmissionCost(s, seg.morphs[i]);
    if (emit == kInf && CharLength(seg.morphs[i]) == 1) {
      bits += FallbackCost(seg.morphs[i]);
    } else {
      bits += emit;
    }
    prev = s;
  }
  return bits + TransitionCost(prev, network_.final_state());
}

Segmentation StateMorphDecoder::Segment(const std::string& word) const {
  if (word.empty()) throw Error(ErrorCode::kEmptyWord, "cannot segment ''");
  const int k = network_.num_states;
  const auto bounds = CharBoundaries(word);
  const int n = static_cast<int>(bounds.size()) - 1;

  struct Cell {
    double cost = kInf;
    int start = -1;
    int prev = -1;
    bool fallback = false;
  };
  std::vector<Cell> cells((n + 1) * k);
  auto cell = [&](int j, int s) -> Cell& { return cells[j * k + s]; };

  std::vector<double> arc(k);
  for (int j = 1; j <= n; ++j) {
    const int lo = std::max(0, j - static_cast<int>(max_morph_chars_));
    // Shorter morphs first, then lower state ids; only strict improvements
    // replace, so earlier candidates win ties.
    for (int i = j - 1; i >= lo; --i) {
      const std::string piece = word.substr(bounds[i], bounds[j] - bounds[i]);
      const bool in_lexicon = emission_.count(piece) != 0;
      if (!in_lexicon && j - i != 1) continue;
      const double fallback = in_lexicon ? 0.0 : FallbackCost(piece);
      for (int s = 0; s < k; ++s) {
        arc[s] = in_lexicon ? EmissionCost(s, piece) : fallback;
      }
      for (int s = 0; s < k; ++s) {
        Cell& target = cell(j, s);
        if (i == 0) {
          const double c = TransitionCost(network_.initial_state(), s) + arc[s];
          if (c < target.cost) target = {c, 0, network_.initial_state(), !in_lexicon};
          continue;
        }
        for (int prev = 0; prev < k; ++prev) {
          const Cell& from = cell(i, prev);
          if (from.cost == kInf) continue;
          const double c = from.cost + TransitionCost(prev, s) + arc[s];
          if (c < target.cost) target = {c, i, prev, !in_lexicon};
        }
      }
    }
  }

  int state = -1;
  double best = kInf;
  for (int s = 0; s < k; ++s) {
    const double c = cell(n, s).cost + TransitionCost(s, network_.final_state());
    if (c < best) {
      best = c;
      state = s;
    }
  }

  Segmentation seg;
  seg.word = word;
  std::vector<bool> flags;
  for (int j = n; j > 0;) {
    const Cell& c = cell(j, state);
    seg.morphs.push_back(word.substr(bounds[c.start], bounds[j] - bounds[c.start]));
    seg.states.push_back(state);
    flags.push_back(c.fallback);
    j = c.start;
    state = c.prev;
  }
  std::reverse(seg.morphs.begin(), seg.morphs.end());
  std::reverse(seg.states.begin(), seg.states.end());
  std::reverse(flags.begin(), flags.end());
  if (std::find(flags.begin(), flags.end(), true) != flags.end()) {
    seg.fallback = std::move(flags);
  }
  return seg;
}

Segmentation ViterbiSegment(const std::string& word,
                            const StateNetwork& network) {
  return StateMorphDecoder(network).Segment(word);
}

StateNetwork PruneStateMorph(const StateNetwork& network,
                             std::size_t target_size) {
  if (target_size == 0) {
    throw Error(ErrorCode::kInvalidArgument, "prune target must be >= 1");
  }
  if (target_size >= network.lexicon.size()) return network;
  StateNetwork pruned = network;
  pruned.lexicon = PruneLexicon(network.lexicon, target_size);
  for (auto& table : pruned.emissions) {
    std::erase_if(table, [&](const auto& entry) {
      return !pruned.lexicon.contains(entry.first);
    });
  }
  pruned.pruned = true;
  return pruned;
}

StateMorphSegmenter::StateMorphSegmenter(StateNetwork network, int64_t steps)
    : decoder_(std::make_shared<StateMorphDecoder>(std::move(network))),
      steps_(steps) {}

Segmentation StateMorphSegmenter::Segment(const std::string& word) const {
  if (!decoder_) {
    throw Error(ErrorCode::kNotTrained, "statemorph is not trained");
  }
  return decoder_->Segment(word);
}

std::size_t StateMorphSegmenter::inventory_size() const {
  return decoder_ ? decoder_->network().lexicon.size() : 0;
}

void WriteStateNetwork(std::ostream& out, const StateNetwork& network) {
  out << "#morphoseg-statemorph v1\n" << network.num_states << '\n';
  for (const auto& row : network.transitions) {
    for (std::size_t b = 0; b < row.size(); ++b) {
      if (b) out << ' ';
      out << row[b];
    }
    out << '\n';
  }
  for (int s = 0; s < network.num_states; ++s) {
    out << "#state " << s << '\n';
    Lexicon table;
    for (const auto& [m, n] : network.emissions[s]) table.Add(m, n);
    WriteLexicon(out, table);
  }
}

StateNetwork ReadStateNetwork(std::istream& in, const std::string& source_id) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != "#morphoseg-statemorph v1") {
    throw ParseError(source_id, 1, "expected header '#morphoseg-statemorph v1'");
  }
  auto parse_int = [&](std::string_view text, int64_t& value) {
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    return ec == std::errc() && ptr == text.data() + text.size();
  };

  StateNetwork net;
  int64_t k = 0;
  ++line_no;
  if (!std::getline(in, line) || !parse_int(line, k) || k < 1 || k > 100000) {
    throw ParseError(source_id, line_no, "expected state count K >= 1");
  }
  net.num_states = static_cast<int>(k);
  for (int a = 0; a < k + 2; ++a) {
    ++line_no;
    if (!std::getline(in, line)) {
      throw ParseError(source_id, line_no, "truncated transition matrix");
    }
    std::istringstream fields(line);
    std::vector<int64_t> row;
    std::string field;
    while (fields >> field) {
      int64_t v = 0;
      if (!parse_int(field, v) || v < 0) {
        throw ParseError(source_id, line_no, "bad transition count '" + field + "'");
      }
      row.push_back(v);
    }
    if (row.size() != static_cast<std::size_t>(k + 2)) {
      throw ParseError(source_id, line_no, "transition row needs K+2 entries");
    }
    net.transitions.push_back(std::move(row));
  }
  net.emissions.resize(net.num_states);
  int state = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.rfind("#state ", 0) == 0) {
      int64_t s = 0;
      if (!parse_int(std::string_view(line).substr(7), s) || s != state + 1 ||
          s >= k) {
        throw ParseError(source_id, line_no, "bad state block header");
      }
      state = static_cast<int>(s);
      continue;
    }
    if (state < 0) {
      throw ParseError(source_id, line_no, "emission outside a state block");
    }
    const auto tab = line.find('\t');
    int64_t n = 0;
    if (tab == std::string::npos || tab == 0 ||
        !parse_int(std::string_view(line).substr(tab + 1), n) || n <= 0) {
      throw ParseError(source_id, line_no, "expected morph<TAB>count");
    }
    const std::string morph = line.substr(0, tab);
    if (!IsValidUtf8(morph)) {
      throw ParseError(source_id, line_no, "ill-formed UTF-8");
    }
    net.emissions[state][morph] += n;
    net.lexicon.Add(morph, n);
  }
  if (state != net.num_states - 1) {
    throw ParseError(source_id, line_no, "missing state blocks");
  }
  try {
    net.Validate();
  } catch (const Error&) {
    net.pruned = true;
    try {
      net.Validate();
    } catch (const Error& e) {
      throw ParseError(source_id, line_no, e.what());
    }
  }
  return net;
}

}  // namespace morphoseg
