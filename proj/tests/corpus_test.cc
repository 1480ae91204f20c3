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

#include <unicode/locid.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <map>
#include <sstream>

#include "doctest.h"
#include "morphoseg/corpus.h"
#include "morphoseg/error.h"
#include "testing.h"

namespace morphoseg {
namespace {

SentenceStream Stream(std::vector<std::vector<std::string>> sentences) {
  return {std::move(sentences), "test"};
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::kUsageError;
}

TEST_CASE("ExtractWordList folds case") {
  const WordList w = ExtractWordList(Stream({{"The", "the", "cat"}}));
  CHECK(w.count("the") == 2);
  CHECK(w.count("cat") == 1);
  CHECK(w.total_tokens() == 3);
  CHECK(w.total_types() == 2);

  const WordList single = ExtractWordList(Stream({{"a"}}));
  CHECK(single.count("a") == 1);
  CHECK(single.total_types() == 1);
}

TEST_CASE("ExtractWordList matches an independent recount") {
  const SentenceStream corpus = testing::SyntheticCorpus(100, 3);
  std::map<std::string, int64_t> recount;
  int64_t tokens = 0;
  for (const auto& sentence : corpus.sentences) {
    for (const auto& word : sentence) {
      std::string lower;
      icu::UnicodeString::fromUTF8(word).toLower(icu::Locale::getRoot()).toUTF8String(lower);
      ++recount[lower];
      ++tokens;
    }
  }
  const WordList w = ExtractWordList(corpus);
  CHECK(w.entries() == recount);
  CHECK(w.total_tokens() == tokens);
}

TEST_CASE("ExtractWordList ignores sentence order and applies min count") {
  SentenceStream a = Stream({{"Koira", "kissa"}, {"kissa"}, {"talo"}});
  SentenceStream b = Stream({{"talo"}, {"kissa"}, {"kissa", "koira"}});
  CHECK(ExtractWordList(a) == ExtractWordList(b));
  const WordList filtered = ExtractWordList(a, 2);
  CHECK(filtered.total_types() == 1);
  CHECK(filtered.count("kissa") == 2);
}

TEST_CASE("ExtractWordList rejects an empty stream") {
  CHECK(CodeOf([] { ExtractWordList(Stream({})); }) == ErrorCode::kEmptyCorpus);
}

TEST_CASE("WordList enforces its invariants") {
  WordList w;
  CHECK(CodeOf([&] { w.Add("", 1); }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([&] { w.Add("Cat", 1); }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([&] { w.Add("a b", 1); }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([&] { w.Add("cat", 0); }) == ErrorCode::kInvalidCounts);
}

TEST_CASE("SplitCorpus sizes and determinism") {
  std::vector<std::vector<std::string>> sentences;
  for (int i = 0; i < 10; ++i) sentences.push_back({"s" + std::to_string(i)});
  const SentenceStream s = Stream(sentences);
  const CorpusSplit split = SplitCorpus(s, {0.8, 0.1, 0.1}, 7);
  CHECK(split.train.size() == 8);
  CHECK(split.valid.size() == 1);
  CHECK(split.test.size() == 1);
  const CorpusSplit again = SplitCorpus(s, {0.8, 0.1, 0.1}, 7);
  CHECK(again.train.sentences == split.train.sentences);
  CHECK(again.valid.sentences == split.valid.sentences);
  CHECK(again.test.sentences == split.test.sentences);
}

TEST_CASE("SplitCorpus is a disjoint cover") {
  std::vector<std::vector<std::string>> sentences;
  for (int i = 0; i < 1000; ++i) sentences.push_back({"w" + std::to_string(i % 97)});
  const SentenceStream s = Stream(sentences);
  const CorpusSplit split = SplitCorpus(s, {0.9, 0.05, 0.05}, 11);
  CHECK(split.train.size() + split.valid.size() + split.test.size() == 1000);
  std::multiset<std::vector<std::string>> in(sentences.begin(), sentences.end());
  std::multiset<std::vector<std::string>> out;
  for (const auto* part : {&split.train, &split.valid, &split.test}) {
    out.insert(part->sentences.begin(), part->sentences.end());
  }
  CHECK(in == out);
}

TEST_CASE("SplitCorpus preconditions") {
  CHECK(CodeOf([] { SplitCorpus(Stream({{"a"}, {"b"}}), {0.8, 0.1, 0.1}, 1); }) ==
        ErrorCode::kCorpusTooSmall);
  CHECK(CodeOf([] { SplitCorpus(Stream({{"a"}, {"b"}, {"c"}}), {0.5, 0.1, 0.1}, 1); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(CodeOf([] { SplitCorpus(Stream({{"a"}, {"b"}, {"c"}}), {1.0, 0.0, 0.0}, 1); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("ReadSentences splits on whitespace and reports bad bytes") {
  std::istringstream in("Hello,  world!\n\n\tTwo\xe2\x80\x83words\n");
  const SentenceStream s = ReadSentences(in, "mem");
  REQUIRE(s.size() == 2);
  CHECK(s.sentences[0] == std::vector<std::string>{"Hello,", "world!"});
  CHECK(s.sentences[1] == std::vector<std::string>{"Two", "words"});

  std::istringstream punct("Hello , world !\n");
  const SentenceStream stripped = ReadSentences(punct, "mem", true);
  CHECK(stripped.sentences[0] == std::vector<std::string>{"Hello", "world"});

  std::istringstream bad("ok\nbad \xff byte\n");
  try {
    ReadSentences(bad, "mem");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("WordList TSV round trip and ordering") {
  WordList w;
  w.Add("b", 2);
  w.Add("a", 2);
  w.Add("c", 5);
  std::ostringstream out;
  WriteWordList(out, w);
  CHECK(out.str() == "c\t5\na\t2\nb\t2\n");
  std::istringstream in(out.str());
  CHECK(ReadWordList(in, "mem") == w);

  std::istringstream bad("a\t1\nb\tx\n");
  try {
    ReadWordList(bad, "mem");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

}  // namespace
}  // namespace morphoseg
