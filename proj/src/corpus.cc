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

#include "morphoseg/corpus.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>

#include "morphoseg/error.h"
#include "morphoseg/rng.h"
#include "morphoseg/utf8.h"

namespace morphoseg {

namespace {

bool HasWhitespace(const std::string& word) {
  for (char32_t c : DecodeUtf8(word)) {
    if (IsWhitespace(c)) return true;
  }
  return false;
}

}  // namespace

void WordList::Add(const std::string& word, int64_t count) {
  if (word.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty word in word list");
  }
  if (count <= 0) {
    throw Error(ErrorCode::kInvalidCounts,
                "non-positive count for word '" + word + "'");
  }
  if (HasWhitespace(word)) {
    throw Error(ErrorCode::kInvalidArgument,
                "word contains whitespace: '" + word + "'");
  }
  if (FoldCase(word) != word) {
    throw Error(ErrorCode::kInvalidArgument,
                "word is not lowercase: '" + word + "'");
  }
  entries_[word] += count;
  total_tokens_ += count;
}

int64_t WordList::count(const std::string& word) const {
  auto it = entries_.find(word);
  return it == entries_.end() ? 0 : it->second;
}

std::vector<std::pair<std::string, int64_t>> WordList::Sorted() const {
  std::vector<std::pair<std::string, int64_t>> out(entries_.begin(),
                                                   entries_.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;
  });
  return out;
}

SentenceStream ReadSentences(std::istream& in, const std::string& source_id,
                             bool strip_punct) {
  SentenceStream stream;
  stream.source_id = source_id;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!IsValidUtf8(line)) {
      throw ParseError(source_id, line_no, "ill-formed UTF-8");
    }
    auto words = SplitWords(line, strip_punct);
    if (!words.empty()) stream.sentences.push_back(std::move(words));
  }
  return stream;
}

SentenceStream ReadSentencesFile(const std::string& path, bool strip_punct) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  return ReadSentences(in, path, strip_punct);
}

void WriteSentences(std::ostream& out, const SentenceStream& stream) {
  for (const auto& sentence : stream.sentences) {
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      if (i) out << ' ';
      out << sentence[i];
    }
    out << '\n';
  }
}

WordList ExtractWordList(const SentenceStream& stream, int64_t min_count) {
  if (stream.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "no sentences in " + stream.source_id);
  }
  std::map<std::string, int64_t> counts;
  for (const auto& sentence : stream.sentences) {
    for (const auto& word : sentence) ++counts[FoldCase(word)];
  }
  WordList words;
  for (const auto& [word, count] : counts) {
    if (count >= min_count) words.Add(word, count);
  }
  return words;
}

CorpusSplit SplitCorpus(const SentenceStream& stream,
                        const std::array<double, 3>& ratios, uint64_t seed) {
  for (double r : ratios) {
    if (!(r > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "split ratios must be positive");
    }
  }
  const double sum = ratios[0] + ratios[1] + ratios[2];
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "split ratios must sum to 1");
  }
  const std::size_t n = stream.size();
  if (n < 3) {
    throw Error(ErrorCode::kCorpusTooSmall,
                "need at least 3 sentences to split, got " + std::to_string(n));
  }

  // Largest-remainder apportionment; the epsilon absorbs representation
  // error such as 0.29 * 100 = 28.999999999999996.
  std::array<std::size_t, 3> sizes{};
  std::array<double, 3> remainders{};
  std::size_t assigned = 0;
  for (int k = 0; k < 3; ++k) {
    const double exact = ratios[k] * static_cast<double>(n);
    sizes[k] = static_cast<std::size_t>(std::floor(exact + 1e-9));
    remainders[k] = exact - static_cast<double>(sizes[k]);
    assigned += sizes[k];
  }
  while (assigned < n) {
    int best = 0;
    for (int k = 1; k < 3; ++k) {
      if (remainders[k] > remainders[best]) best = k;
    }
    ++sizes[best];
    remainders[best] = -1.0;
    ++assigned;
  }
  for (int k = 0; k < 3; ++k) {
    if (sizes[k] == 0) {
      auto largest = std::max_element(sizes.begin(), sizes.end());
      --*largest;
      sizes[k] = 1;
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.Shuffle(order);

  CorpusSplit split;
  std::array<SentenceStream*, 3> parts{&split.train, &split.valid, &split.test};
  const std::array<const char*, 3> names{"train", "valid", "test"};
  std::size_t offset = 0;
  for (int k = 0; k < 3; ++k) {
    std::vector<std::size_t> picked(order.begin() + offset,
                                    order.begin() + offset + sizes[k]);
    offset += sizes[k];
    std::sort(picked.begin(), picked.end());
    parts[k]->source_id = stream.source_id + "#" + names[k];
    for (std::size_t idx : picked) {
      parts[k]->sentences.push_back(stream.sentences[idx]);
    }
  }
  return split;
}

void WriteWordList(std::ostream& out, const WordList& words) {
  for (const auto& [word, count] : words.Sorted()) {
    out << word << '\t' << count << '\n';
  }
}

WordList ReadWordList(std::istream& in, const std::string& source_id) {
  WordList words;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw ParseError(source_id, line_no, "expected word<TAB>count");
    }
    const std::string word = line.substr(0, tab);
    const std::string_view count_text(line.data() + tab + 1,
                                      line.size() - tab - 1);
    int64_t count = 0;
    auto [ptr, ec] = std::from_chars(
        count_text.data(), count_text.data() + count_text.size(), count);
    if (ec != std::errc() || ptr != count_text.data() + count_text.size() ||
        count <= 0) {
      throw ParseError(source_id, line_no, "bad count '" +
                                               std::string(count_text) + "'");
    }
    if (!IsValidUtf8(word)) {
      throw ParseError(source_id, line_no, "ill-formed UTF-8");
    }
    try {
      words.Add(word, count);
    } catch (const Error& e) {
      throw ParseError(source_id, line_no, e.what());
    }
  }
  return words;
}

}  // namespace morphoseg
