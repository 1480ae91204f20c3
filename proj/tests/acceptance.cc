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

// Runs the acceptance checks and prints one PASS/FAIL line per check.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "morphoseg/bpe.h"
#include "morphoseg/cli.h"
#include "morphoseg/corpus.h"
#include "morphoseg/lexicon.h"
#include "morphoseg/lmeval.h"
#include "morphoseg/morfessor.h"
#include "morphoseg/rng.h"
#include "morphoseg/segmenter.h"
#include "morphoseg/statemorph.h"
#include "morphoseg/utf8.h"
#include "morphoseg/vocabulary.h"
#include "testing.h"

namespace morphoseg {
namespace {

namespace fs = std::filesystem;

// Global minimum of the StateMorph objective on the nine-word grammar with
// two states, proven by tests/oracles/statemorph_optimum.cc.
constexpr double kNineWordOptimumBits = 119.981159537;

// Collects failures of one check.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::string Summary() const {
    std::string s;
    for (const auto& f : failures_) s += "\n    " + f;
    if (failed_ > failures_.size()) {
      s += "\n    ... " + std::to_string(failed_ - failures_.size()) + " more";
    }
    return s;
  }

 private:
  std::vector<std::string> failures_;
  std::size_t failed_ = 0;
};

double Rel(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

std::string Join(const std::vector<std::string>& parts) {
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : " ") + p;
  return s;
}

// 1. Incremental BPE against the rescan reference.
void BpeOracle(Check& c) {
  Rng rng(1001);
  for (int trial = 0; trial < 50; ++trial) {
    const WordList words = testing::RandomWordList(rng, 20, 8, "abcdef");
    std::set<std::string> alphabet;
    for (const auto& [w, n] : words.entries()) {
      for (const auto& ch : SplitChars(w)) alphabet.insert(ch);
    }
    const std::size_t target = alphabet.size() + rng.Index(40);
    const BpeModel model = TrainBpe(words, target);
    const auto naive = testing::NaiveBpeMerges(words, target);
    c.Expect(model.table.merges == naive,
             "list " + std::to_string(trial) + ": merge sequence differs");
    for (const auto& [w, n] : words.entries()) {
      c.Expect(ApplyBpe(w, model.table).morphs == testing::NaiveBpeApply(w, naive),
               "list " + std::to_string(trial) + ": apply differs on " + w);
    }
  }
}

// 2. Morfessor near the exhaustive optimum; epoch costs never rise.
void MorfessorOptimality(Check& c) {
  WordList toy;
  for (const char* w : {"reopen", "replay", "open", "play"}) toy.Add(w, 10);
  const testing::MorfessorOptimum best = testing::ExhaustiveMorfessor(toy);
  const MorfessorModel m = TrainMorfessor(toy);
  c.Expect(m.cost.total_bits <= best.cost * 1.01,
           "toy cost " + std::to_string(m.cost.total_bits) + " vs optimum " +
               std::to_string(best.cost));
  c.Expect(Rel(m.cost.total_bits, testing::MorfessorCostOracle(
                                      [&] {
                                        std::map<std::string, std::vector<std::string>> a;
                                        for (const auto& [w, s] : m.analyses) a[w] = s.morphs;
                                        return a;
                                      }(),
                                      toy)) < 1e-9,
           "reported cost disagrees with the oracle");

  std::vector<WordList> corpora = {toy, testing::NineWordGrammar(),
                                   ExtractWordList(testing::SyntheticCorpus(300, 3))};
  Rng rng(2002);
  for (int i = 0; i < 5; ++i) corpora.push_back(testing::RandomWordList(rng, 15, 8, "abcd"));
  for (std::size_t i = 0; i < corpora.size(); ++i) {
    for (uint64_t seed : {0, 1, 2}) {
      MorfessorOptions options;
      options.seed = seed;
      const MorfessorModel model = TrainMorfessor(corpora[i], options);
      double prev = model.trace.initial_cost;
      for (double cost : model.trace.epoch_costs) {
        c.Expect(cost <= prev + 1e-9, "corpus " + std::to_string(i) + ": epoch cost rose");
        prev = cost;
      }
    }
  }
}

// 3. StateMorph cost parts against a direct evaluation.
void StateMorphCost(Check& c) {
  Rng rng(3003);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 1 + static_cast<int>(rng.Index(4));
    const WordList w = testing::RandomWordList(rng, 8, 7, "abcde");
    const StateAnalyses a = testing::RandomAnalyses(w, k, rng);
    const SmCost got = SmTotalCost(BuildStateNetwork(k, a, w), a, w);
    const testing::SmCostOracle o = testing::StateMorphCostOracle(k, a, w);
    const std::string tag = "network " + std::to_string(trial);
    c.Expect(Rel(got.lexicon_bits, o.lexicon) < 1e-6, tag + ": lexicon bits");
    c.Expect(Rel(got.transition_bits, o.transitions) < 1e-6, tag + ": transition bits");
    c.Expect(Rel(got.emission_bits, o.emissions) < 1e-6, tag + ": emission bits");
    c.Expect(Rel(got.corpus_bits, o.corpus) < 1e-6, tag + ": corpus bits");
    c.Expect(Rel(got.total_bits, o.lexicon + o.transitions + o.emissions + o.corpus) < 1e-6,
             tag + ": total bits");
  }
  // With one state the corpus code is a unigram code over morphs plus an
  // end-of-word event.
  for (int trial = 0; trial < 20; ++trial) {
    const WordList w = testing::RandomWordList(rng, 8, 7, "abcd");
    const StateAnalyses a = testing::RandomAnalyses(w, 1, rng);
    const SmCost got = SmTotalCost(BuildStateNetwork(1, a, w), a, w);
    std::map<std::string, double> morph;
    double tokens = 0.0, words = 0.0;
    for (const auto& [word, seg] : a) {
      const double n = static_cast<double>(w.count(word));
      for (const auto& m : seg.morphs) morph[m] += n;
      tokens += n * seg.morphs.size();
      words += n;
    }
    double unigram = 0.0;
    for (const auto& [word, seg] : a) {
      const double n = static_cast<double>(w.count(word));
      for (std::size_t i = 0; i < seg.morphs.size(); ++i) {
        const double next = i + 1 == seg.morphs.size() ? words : tokens - words;
        unigram -= n * (std::log2(morph[seg.morphs[i]] / tokens) + std::log2(next / tokens));
      }
    }
    c.Expect(Rel(got.corpus_bits, unigram) < 1e-6,
             "K=1 trial " + std::to_string(trial) + ": corpus bits");
  }
}

AnnealSchedule NineWordSchedule(uint64_t seed) {
  AnnealSchedule s;
  s.alpha = 0.999;
  s.seed = seed;
  return s;
}

// 4. Annealing reaches the known optimum.
void StateMorphSearch(Check& c) {
  const WordList words = testing::NineWordGrammar();
  int hits = 0;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const auto start = std::chrono::steady_clock::now();
    const StateMorphModel m = TrainStateMorph(words, 2, NineWordSchedule(seed));
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::string tag = "seed " + std::to_string(seed);
    c.Expect(seconds < 60.0, tag + ": took " + std::to_string(seconds) + " s");
    c.Expect(m.cost.total_bits >= kNineWordOptimumBits - 1e-4,
             tag + ": below the known optimum");
    if (m.cost.total_bits <= kNineWordOptimumBits * 1.02) ++hits;
    double prev = m.trace.initial_cost;
    bool monotone = true;
    for (const auto& level : m.trace.levels) {
      monotone = monotone && level.best_cost <= prev + 1e-9;
      prev = level.best_cost;
    }
    c.Expect(monotone, tag + ": best cost rose");
    const StateMorphModel again = TrainStateMorph(words, 2, NineWordSchedule(seed));
    c.Expect(again.analyses == m.analyses && again.trace.proposals == m.trace.proposals &&
                 again.cost.total_bits == m.cost.total_bits,
             tag + ": not deterministic");
  }
  c.Expect(hits >= 8, "only " + std::to_string(hits) + "/10 seeds within 2%");
}

// 5. Viterbi against exhaustive enumeration of the lattice.
void ViterbiExactness(Check& c) {
  std::vector<std::pair<StateNetwork, std::string>> nets;
  nets.emplace_back(TrainStateMorph(testing::NineWordGrammar(), 2, NineWordSchedule(1)).network,
                    "taloskn");
  Rng rng(5005);
  for (int k = 1; k <= 3; ++k) {
    AnnealSchedule s;
    s.alpha = 0.9;
    s.seed = k;
    nets.emplace_back(
        TrainStateMorph(testing::RandomWordList(rng, 12, 7, "abcd"), k, s).network, "abcde");
  }
  for (int probe = 0; probe < 200; ++probe) {
    const auto& [net, alphabet] = nets[probe % nets.size()];
    std::string word;
    const std::size_t len = 1 + rng.Index(8);
    for (std::size_t i = 0; i < len; ++i) word += alphabet[rng.Index(alphabet.size())];
    const Segmentation got = ViterbiSegment(word, net);
    const double cost = testing::LatticePathCost(net, got.morphs, got.states);
    const double best = testing::ExhaustiveLatticeMinimum(net, word);
    c.Expect(Rel(cost, best) < 1e-9,
             word + ": " + std::to_string(cost) + " vs " + std::to_string(best));
  }
}

// 6. Pruning keeps the most frequent morphs and single characters.
void PruningContract(Check& c) {
  const auto check_lexicon = [&](const Lexicon& before, const Lexicon& after,
                                 std::size_t target, const std::string& tag) {
    int64_t min_kept = INT64_MAX, max_dropped = 0;
    for (const auto& [m, n] : before.morphs()) {
      const bool single = CharLength(m) == 1;
      if (after.contains(m)) {
        c.Expect(after.count(m) == n, tag + ": count changed for " + m);
        if (!single) min_kept = std::min(min_kept, n);
      } else {
        c.Expect(!single, tag + ": dropped single character " + m);
        max_dropped = std::max(max_dropped, n);
      }
    }
    for (const auto& [m, n] : after.morphs()) {
      c.Expect(before.contains(m), tag + ": invented " + m);
    }
    std::size_t kept_multi = 0;
    for (const auto& [m, n] : after.morphs()) kept_multi += CharLength(m) > 1;
    c.Expect(kept_multi <= target, tag + ": " + std::to_string(kept_multi) +
                                       " multi-character morphs kept for target " +
                                       std::to_string(target));
    c.Expect(after.size() >= std::min(target, before.size()),
             tag + ": size " + std::to_string(after.size()) + " below target");
    c.Expect(max_dropped <= min_kept || min_kept == INT64_MAX,
             tag + ": dropped a more frequent morph");
  };

  Rng rng(6006);
  for (int trial = 0; trial < 10; ++trial) {
    const WordList w = testing::RandomWordList(rng, 15, 8, "abcdef");
    AnnealSchedule s;
    s.alpha = 0.9;
    s.seed = trial;
    const int k = 1 + static_cast<int>(rng.Index(3));
    const StateNetwork net = TrainStateMorph(w, k, s).network;
    const std::size_t target = 1 + rng.Index(net.lexicon.size());
    const std::string tag = "network " + std::to_string(trial);
    check_lexicon(net.lexicon, PruneLexicon(net.lexicon, target), target, tag + " lexicon");
    const StateNetwork pruned = PruneStateMorph(net, target);
    check_lexicon(net.lexicon, pruned.lexicon, target, tag + " network");
    for (int s = 0; s < k; ++s) {
      for (const auto& [m, n] : pruned.emissions[s]) {
        c.Expect(pruned.lexicon.contains(m), tag + ": emission outside lexicon");
        c.Expect(net.emissions[s].count(m) && net.emissions[s].at(m) == n,
                 tag + ": emission changed");
      }
    }
    // Every word over the training alphabet still decodes.
    std::set<std::string> alphabet;
    for (const auto& [m, n] : net.lexicon.morphs()) {
      for (const auto& ch : SplitChars(m)) alphabet.insert(ch);
    }
    const std::vector<std::string> chars(alphabet.begin(), alphabet.end());
    const StateMorphDecoder decoder(pruned);
    for (int probe = 0; probe < 30; ++probe) {
      std::string word;
      const std::size_t len = 1 + rng.Index(8);
      for (std::size_t i = 0; i < len; ++i) word += chars[rng.Index(chars.size())];
      try {
        const Segmentation seg = decoder.Segment(word);
        std::string joined;
        for (const auto& m : seg.morphs) joined += m;
        c.Expect(joined == word, tag + ": decoded " + Join(seg.morphs) + " for " + word);
        for (std::size_t i = 0; i < seg.morphs.size(); ++i) {
          c.Expect(pruned.lexicon.contains(seg.morphs[i]) ||
                       (seg.fallback[i] && CharLength(seg.morphs[i]) == 1),
                   tag + ": morph outside the pruned lexicon");
        }
        c.Expect(std::isfinite(decoder.PathCost(seg)), tag + ": infinite path for " + word);
      } catch (const std::exception& e) {
        c.Expect(false, tag + ": " + word + " failed: " + e.what());
      }
    }
  }
}

// Splits "baking" as bak+ing and everything else into characters.
class BakingSegmenter : public Segmenter {
 public:
  std::string kind() const override { return "baking"; }
  bool trained() const override { return true; }
  Segmentation Segment(const std::string& word) const override {
    if (word == "baking") return MakeSegmentation(word, {"bak", "ing"});
    return MakeSegmentation(word, SplitChars(word));
  }
  std::size_t inventory_size() const override { return 0; }
};

// 7. decode(encode(s)) == s for every trained segmenter.
void RoundTrip(Check& c) {
  const SentenceStream corpus = testing::SyntheticCorpus(1000, 7007);
  const WordList words = ExtractWordList(corpus);
  AnnealSchedule s;
  s.seed = 7;
  std::vector<NamedSegmenter> segs = {
      {"char", std::make_shared<CharSegmenter>(words)},
      {"bpe", std::make_shared<BpeSegmenter>(TrainBpe(words, 60).table)},
      {"morfessor", std::make_shared<MorfessorSegmenter>(TrainMorfessor(words))},
      {"statemorph",
       std::make_shared<StateMorphSegmenter>(TrainStateMorph(words, 3, s).network)}};
  for (const auto& [name, seg] : segs) {
    const Vocabulary vocab = AssembleVocabulary(corpus, *seg);
    const IdSequences ids = Encode(corpus, vocab, *seg);
    std::size_t unk = 0;
    for (const auto& sentence : ids) unk += std::count(sentence.begin(), sentence.end(), 0);
    c.Expect(unk == 0, name + ": unknown tokens in the training corpus");
    const SentenceStream back = Decode(ids, vocab);
    std::size_t same = 0;
    for (std::size_t i = 0; i < corpus.size() && i < back.size(); ++i) {
      if (back.sentences[i] == corpus.sentences[i]) ++same;
    }
    c.Expect(back.size() == corpus.size() && same == corpus.size(),
             name + ": " + std::to_string(same) + "/" + std::to_string(corpus.size()) +
                 " sentences restored");
  }

  const std::string marker(kWordInitialMarker);
  const BakingSegmenter baking;
  const auto tokens = TokenizeWord("Baking", baking);
  c.Expect(tokens == std::vector<std::string>{marker + "Bak", "ing"},
           "Baking tokenized as " + Join(tokens));
  const SentenceStream text{{{"Baking", "baking", "BAKING"}}, "mem"};
  const Vocabulary vocab = AssembleVocabulary(text, baking);
  for (const char* t : {"\xe2\x96\x81" "Bak", "\xe2\x96\x81" "bak", "ing", "\xe2\x96\x81" "BAK",
                        "ING"}) {
    c.Expect(vocab.id(t) >= 0, std::string("missing token ") + t);
  }
  const SentenceStream back = Decode(Encode(text, vocab, baking), vocab);
  c.Expect(back.size() == 1 && back.sentences[0] == text.sentences[0],
           "Baking sentence not restored");
}

// 8. Character baseline against morph segmenters at matched sizes.
void DirectionalComparison(Check& c) {
  const SentenceStream corpus = testing::SyntheticCorpus(3000, 8008);
  const CorpusSplit split = SplitCorpus(corpus, {0.8, 0.1, 0.1}, DeriveSeed(42, 0));
  const WordList words = ExtractWordList(split.train);

  MorfessorOptions mopt;
  mopt.seed = DeriveSeed(42, 1);
  auto morfessor = std::make_shared<MorfessorSegmenter>(TrainMorfessor(words, mopt));
  AnnealSchedule s;
  s.seed = DeriveSeed(42, 2);
  const StateMorphModel sm = TrainStateMorph(words, 4, s);
  auto statemorph = std::make_shared<StateMorphSegmenter>(sm.network, sm.trace.proposals);
  // BPE cannot go below its alphabet, so neither can the pruned size.
  std::set<std::string> alphabet;
  for (const auto& [w, n] : words.entries()) {
    for (const auto& ch : SplitChars(w)) alphabet.insert(ch);
  }
  const std::size_t smp_size = std::max(alphabet.size(), sm.network.lexicon.size() / 2);
  auto smp = std::make_shared<StateMorphSegmenter>(PruneStateMorph(sm.network, smp_size),
                                                   sm.trace.proposals);
  const auto bpe_like = [&](const Lexicon& reference) {
    return std::make_shared<BpeSegmenter>(TrainBpe(words, MatchVocabSize(reference)).table);
  };
  const std::vector<NamedSegmenter> segs = {
      {"char", std::make_shared<CharSegmenter>(words)},
      {"morfessor", morfessor},
      {"bpe=morfessor", bpe_like(morfessor->model().lexicon)},
      {"statemorph", statemorph},
      {"bpe=statemorph", bpe_like(sm.network.lexicon)},
      {"smp", smp},
      {"bpe=smp", bpe_like(PruneStateMorph(sm.network, smp_size).lexicon)}};
  const std::vector<ComparisonRow> rows = CompareSegmenters(split.train, split.valid, segs);
  std::ostringstream table;
  WriteComparisonTsv(table, rows);
  std::fputs(table.str().c_str(), stdout);

  c.Expect(rows.size() == segs.size(), "row count");
  for (std::size_t i : {2, 4, 6}) {
    c.Expect(rows[i].vocab_size == rows[i - 1].vocab_size ||
                 rows[i].vocab_size < rows[i - 1].vocab_size,
             rows[i].segmenter + ": size " + std::to_string(rows[i].vocab_size) + " vs " +
                 std::to_string(rows[i - 1].vocab_size));
  }
  for (std::size_t i : {1, 3, 5}) {
    c.Expect(rows[0].per_word_ppl > rows[i].per_word_ppl,
             "char " + std::to_string(rows[0].per_word_ppl) + " <= " + rows[i].segmenter +
                 " " + std::to_string(rows[i].per_word_ppl));
  }
}

struct CliResult {
  int code;
  std::string err;
};

CliResult Cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"morphoseg"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = Run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, err.str()};
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// 9. Replaying the provenance block of each command reproduces its outputs.
void Replay(Check& c) {
  const fs::path dir = fs::temp_directory_path() / "morphoseg_acceptance_replay";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto p = [&](const std::string& name) { return (dir / name).string(); };
  {
    std::ofstream out(p("corpus.txt"));
    WriteSentences(out, testing::SyntheticCorpus(400, 9009));
  }
  // Each step: arguments and the output flags to redirect on replay.
  struct Step {
    std::vector<std::string> args;
    std::vector<std::pair<std::string, std::string>> outputs;  // flag, file
  };
  const std::vector<Step> steps = {
      {{"extract", "--input", p("corpus.txt"), "--seed", "5"},
       {{"--output", "words.tsv"}, {"--train-out", "train.txt"},
        {"--valid-out", "valid.txt"}, {"--test-out", "test.txt"}}},
      {{"train-bpe", "--words", p("words.tsv"), "--vocab-size", "40"},
       {{"--output", "bpe.txt"}}},
      {{"train-morfessor", "--words", p("words.tsv"), "--seed", "3"},
       {{"--output", "morf.txt"}}},
      {{"train-statemorph", "--words", p("words.tsv"), "--states", "3", "--alpha", "0.95"},
       {{"--output", "sm.txt"}}},
      {{"prune", "--model", p("sm.txt"), "--target", "10"}, {{"--output", "smp.txt"}}},
      {{"build-vocab", "--corpus", p("train.txt"), "--segmenter", "morfessor", "--model",
        p("morf.txt")},
       {{"--output", "vocab.txt"}}},
      {{"encode", "--input", p("valid.txt"), "--vocab", p("vocab.txt"), "--segmenter",
        "morfessor", "--model", p("morf.txt")},
       {{"--output", "ids.txt"}}},
      {{"decode", "--input", p("ids.txt"), "--vocab", p("vocab.txt")},
       {{"--output", "decoded.txt"}}},
      {{"eval-ppl", "--train", p("train.txt"), "--valid", p("valid.txt"), "--segmenter",
        "bpe", "--model", p("bpe.txt")},
       {{"--output", "ppl.json"}}},
      {{"compare", "--train", p("train.txt"), "--valid", p("valid.txt"), "--segmenter",
        "char", "--segmenter", "smp:30", "--segmenter", "bpe:match=smp:30", "--alpha",
        "0.95"},
       {{"--output-tsv", "cmp.tsv"}, {"--output-json", "cmp.json"}}},
  };
  for (const Step& step : steps) {
    std::vector<std::string> first = step.args;
    for (const auto& [flag, file] : step.outputs) {
      first.push_back(flag);
      first.push_back(p(file));
    }
    const CliResult run = Cli(first);
    c.Expect(run.code == 0, step.args[0] + " failed: " + run.err);
    if (run.code != 0) continue;
    {
      std::ofstream cfg(p("replay.cfg"));
      cfg << run.err;
    }
    std::vector<std::string> again = {"--config", p("replay.cfg")};
    for (const auto& [flag, file] : step.outputs) {
      again.push_back(flag);
      again.push_back(p("replay_" + file));
    }
    const CliResult replay = Cli(again);
    c.Expect(replay.code == 0, step.args[0] + " replay failed: " + replay.err);
    for (const auto& [flag, file] : step.outputs) {
      const std::string a = Slurp(p(file));
      c.Expect(!a.empty() && a == Slurp(p("replay_" + file)),
               step.args[0] + ": " + file + " differs on replay");
    }
  }
  fs::remove_all(dir);
}

struct Criterion {
  int number;
  std::string name;
  std::function<void(Check&)> run;
  double limit_seconds;  // 0 for none
};

}  // namespace
}  // namespace morphoseg

int main() {
  using morphoseg::Check;
  using morphoseg::Criterion;
  const std::vector<Criterion> criteria = {
      {1, "bpe matches the rescan reference", morphoseg::BpeOracle, 5.0},
      {2, "morfessor within 1% of the exhaustive optimum", morphoseg::MorfessorOptimality,
       10.0},
      {3, "statemorph cost parts match direct evaluation", morphoseg::StateMorphCost, 0.0},
      {4, "statemorph annealing within 2% of the optimum", morphoseg::StateMorphSearch, 0.0},
      {5, "viterbi equals the exhaustive lattice minimum", morphoseg::ViterbiExactness, 0.0},
      {6, "pruning contract", morphoseg::PruningContract, 0.0},
      {7, "encode/decode round trip and case marking", morphoseg::RoundTrip, 0.0},
      {8, "char baseline has the highest per-word perplexity",
       morphoseg::DirectionalComparison, 120.0},
      {9, "cli replay is byte-identical", morphoseg::Replay, 0.0},
  };
  int failed = 0;
  for (const Criterion& criterion : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.Expect(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criterion.limit_seconds > 0 && seconds >= criterion.limit_seconds) {
      check.Expect(false, "exceeded " + std::to_string(criterion.limit_seconds) + " s");
    }
    std::printf("%s criterion %d: %s (%.2f s)%s\n", check.ok() ? "PASS" : "FAIL",
                criterion.number, criterion.name.c_str(), seconds, check.Summary().c_str());
    std::fflush(stdout);
    if (!check.ok()) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
