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

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "doctest.h"
#include "morphoseg/error.h"
#include "morphoseg/morfessor.h"
#include "morphoseg/utf8.h"
#include "testing.h"

namespace morphoseg {
namespace {

WordList Words(std::initializer_list<std::pair<const char*, int64_t>> entries) {
  WordList w;
  for (const auto& [word, n] : entries) w.Add(word, n);
  return w;
}

MorfessorModel Manual(const WordList& words,
                      const std::map<std::string, std::vector<std::string>>& split) {
  MorfessorModel m;
  m.words = words;
  for (const auto& [w, morphs] : split) {
    m.analyses[w] = MakeSegmentation(w, morphs);
    for (const auto& x : morphs) m.lexicon.Add(x, words.count(w));
  }
  return m;
}

std::map<std::string, std::vector<std::string>> Flat(const MorfessorModel& m) {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& [w, seg] : m.analyses) out[w] = seg.morphs;
  return out;
}

TEST_CASE("MorfessorTotalCost examples") {
  const WordList a = Words({{"a", 1}});
  CHECK(MorfessorTotalCost(Manual(a, {{"a", {"a"}}})).part("corpus_bits") == 0.0);

  const WordList two = Words({{"re", 1}, {"open", 1}});
  const auto r = MorfessorTotalCost(Manual(two, {{"re", {"re"}}, {"open", {"open"}}}));
  CHECK(r.part("corpus_bits") == doctest::Approx(2.0));
  CHECK(r.total_bits == doctest::Approx(r.part("prior_bits") + r.part("corpus_bits")));
}

TEST_CASE("MorfessorTotalCost agrees with the spreadsheet oracle") {
  const WordList w = Words({{"reopen", 3}, {"open", 2}, {"replay", 1}, {"play", 4}});
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    std::map<std::string, std::vector<std::string>> split;
    for (const auto& [word, n] : w.entries()) {
      const auto all = testing::AllSegmentations(word);
      split[word] = all[rng.Index(all.size())];
    }
    CHECK(MorfessorTotalCost(Manual(w, split)).total_bits ==
          doctest::Approx(testing::MorfessorCostOracle(split, w)).epsilon(1e-9));
  }
}

TEST_CASE("MorfessorTotalCost detects inconsistent counts") {
  const WordList w = Words({{"ab", 2}});
  MorfessorModel m = Manual(w, {{"ab", {"a", "b"}}});
  m.lexicon.Add("a", 1);
  try {
    MorfessorTotalCost(m);
    FAIL("expected InconsistentModel");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInconsistentModel);
  }
}

TEST_CASE("TrainMorfessor on a single character") {
  const MorfessorModel m = TrainMorfessor(Words({{"a", 1}}));
  CHECK(m.analyses.at("a").morphs == std::vector<std::string>{"a"});
  CHECK(m.lexicon.size() == 1);
  CHECK_THROWS_AS(TrainMorfessor(WordList()), Error);
}

TEST_CASE("TrainMorfessor reaches the exhaustive optimum on the toy corpus") {
  const WordList w = Words({{"reopen", 10}, {"replay", 10}, {"open", 10}, {"play", 10}});
  const auto best = testing::ExhaustiveMorfessor(w);
  for (uint64_t seed : {0, 1, 2, 3}) {
    MorfessorOptions opts;
    opts.seed = seed;
    const MorfessorModel m = TrainMorfessor(w, opts);
    CHECK(m.cost.total_bits <= best.cost * 1.01);
    CHECK(m.cost.total_bits >= best.cost - 1e-9);
  }
}

TEST_CASE("TrainMorfessor cost is monotone and counts stay consistent") {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const WordList w = testing::RandomWordList(rng, 12, 8, "abcde");
    MorfessorOptions opts;
    opts.seed = trial;
    const MorfessorModel m = TrainMorfessor(w, opts);
    double prev = m.trace.initial_cost;
    for (double c : m.trace.step_costs) {
      CHECK(c <= prev + 1e-9);
      prev = c;
    }
    prev = m.trace.initial_cost;
    for (double c : m.trace.epoch_costs) {
      CHECK(c <= prev + 1e-9);
      prev = c;
    }
    Lexicon recount;
    for (const auto& [word, seg] : m.analyses) {
      for (const auto& x : seg.morphs) recount.Add(x, w.count(word));
    }
    CHECK(recount == m.lexicon);
    CHECK(m.cost.total_bits ==
          doctest::Approx(testing::MorfessorCostOracle(Flat(m), w)).epsilon(1e-9));
  }
}

TEST_CASE("TrainMorfessor is deterministic and invariant to count doubling") {
  const WordList w = Words({{"reopen", 10}, {"replay", 10}, {"open", 10}, {"play", 10}});
  const WordList doubled = Words({{"reopen", 20}, {"replay", 20}, {"open", 20}, {"play", 20}});
  MorfessorOptions opts;
  opts.seed = 5;
  const MorfessorModel a = TrainMorfessor(w, opts);
  const MorfessorModel b = TrainMorfessor(w, opts);
  CHECK(Flat(a) == Flat(b));
  CHECK(a.cost.total_bits == b.cost.total_bits);
  CHECK(Flat(TrainMorfessor(doubled, opts)) == Flat(a));
}

TEST_CASE("Morfessor decoding") {
  const WordList w = Words({{"reopen", 10}, {"open", 10}, {"play", 10}});
  MorfessorModel m = Manual(w, {{"reopen", {"re", "open"}}, {"open", {"open"}}, {"play", {"play"}}});
  m.cost = MorfessorTotalCost(m);
  const MorfessorDecoder dec(std::make_shared<MorfessorModel>(m));
  CHECK(dec.Segment("reopen") == m.analyses.at("reopen"));

  const Segmentation q = dec.Segment("q");
  CHECK(q.morphs == std::vector<std::string>{"q"});
  CHECK(q.fallback == std::vector<bool>{true});

  // Independent DP oracle: exhaustive over all segmentations.
  const double n = 40.0;
  std::map<std::string, double> cost = {
      {"re", std::log2(n / 10)}, {"open", std::log2(n / 20)}, {"play", std::log2(n / 10)}};
  // Pooled chars of {re, open, play}: r1 e2 o1 p2 n1 l1 a1 y1 END3 = 13.
  std::map<std::string, double> chars = {{"r", 1}, {"e", 2}, {"o", 1}, {"p", 2}, {"n", 1},
                                         {"l", 1}, {"a", 1}, {"y", 1}};
  auto fallback = [&](const std::string& c) {
    const double spell = std::log2(13.0 / 3) +
                         (chars.count(c) ? std::log2(13.0 / chars[c]) : std::log2(14.0));
    return spell + std::log2(n + 1);
  };
  for (const char* word : {"replay", "playre", "reopenplay", "xopen", "plax"}) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& seg : testing::AllSegmentations(word)) {
      double c = 0.0;
      for (const auto& x : seg) {
        if (cost.count(x)) {
          c += cost[x];
        } else if (CharLength(x) == 1) {
          c += fallback(x);
        } else {
          c = std::numeric_limits<double>::infinity();
        }
      }
      best = std::min(best, c);
    }
    const Segmentation got = dec.Segment(word);
    double got_cost = 0.0;
    for (const auto& x : got.morphs) got_cost += cost.count(x) ? cost[x] : fallback(x);
    CHECK(got_cost == doctest::Approx(best));
    std::string joined;
    for (const auto& x : got.morphs) joined += x;
    CHECK(joined == word);
  }
  CHECK(dec.Segment("replay").morphs == std::vector<std::string>{"re", "play"});
  CHECK_THROWS_AS(dec.Segment(""), Error);
}

TEST_CASE("Morfessor model file round trip") {
  const WordList w = Words({{"reopen", 10}, {"replay", 10}, {"open", 10}, {"play", 10}});
  const MorfessorModel m = TrainMorfessor(w);
  std::ostringstream out;
  WriteMorfessorModel(out, m);
  CHECK(out.str().rfind("#morphoseg-morfessor v1\n", 0) == 0);
  std::istringstream in(out.str());
  const MorfessorModel back = ReadMorfessorModel(in, "mem");
  CHECK(back.lexicon == m.lexicon);
  CHECK(Flat(back) == Flat(m));
  std::ostringstream again;
  WriteMorfessorModel(again, back);
  CHECK(again.str() == out.str());

  const MorfessorSegmenter seg{MorfessorModel(back)};
  CHECK(seg.Segment("replay") == m.analyses.at("replay"));
  CHECK(seg.inventory_size() == m.lexicon.size());
}

}  // namespace
}  // namespace morphoseg
