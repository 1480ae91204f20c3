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

#include "morphoseg/vocabulary.h"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "morphoseg/error.h"
#include "morphoseg/utf8.h"

namespace morphoseg {

namespace {

// Memoizes the tokenization of repeated surface words.
class CachedTokenizer {
 public:
  CachedTokenizer(const Segmenter& segmenter, std::string_view marker)
      : segmenter_(segmenter), marker_(marker) {}

  const std::vector<std::string>& Tokens(const std::string& surface) {
    auto it = cache_.find(surface);
    if (it == cache_.end()) {
      it = cache_.emplace(surface, TokenizeWord(surface, segmenter_, marker_))
               .first;
    }
    return it->second;
  }

 private:
  const Segmenter& segmenter_;
  std::string marker_;
  std::unordered_map<std::string, std::vector<std::string>> cache_;
};

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

}  // namespace

Segmentation RestoreCase(const Segmentation& seg, const std::string& original) {
  const std::u32string chars = DecodeUtf8(original);
  if (FoldCase(original) != seg.word) {
    throw Error(ErrorCode::kCaseFoldMismatch,
                "'" + original + "' does not fold to '" + seg.word + "'");
  }
  Segmentation out = seg;
  out.word = original;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < seg.morphs.size(); ++i) {
    const std::size_t len = CharLength(seg.morphs[i]);
    if (offset + len > chars.size()) {
      throw Error(ErrorCode::kCaseFoldMismatch,
                  "segmentation of '" + seg.word + "' overruns '" + original +
                      "'");
    }
    out.morphs[i] = EncodeUtf8(std::u32string_view(chars).substr(offset, len));
    offset += len;
  }
  if (offset != chars.size()) {
    throw Error(ErrorCode::kCaseFoldMismatch,
                "length mismatch restoring case of '" + original + "'");
  }
  return out;
}

std::vector<std::string> MarkWordInitial(const std::vector<std::string>& morphs,
                                         std::string_view marker) {
  if (morphs.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no morphs to mark");
  }
  std::vector<std::string> tokens = morphs;
  tokens.front().insert(0, marker);
  return tokens;
}

Vocabulary::Vocabulary(std::vector<std::string> tokens, std::string marker)
    : tokens_(std::move(tokens)), marker_(std::move(marker)) {
  if (tokens_.size() < 2 || tokens_[kUnkId] != kUnknownToken ||
      tokens_[kPadId] != kPaddingToken) {
    throw Error(ErrorCode::kInvalidArgument,
                "vocabulary must start with <unk> and <pad>");
  }
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    const auto& tok = tokens_[i];
    const bool marked = StartsWith(tok, marker_);
    if (tok.empty() || (marked && tok.size() == marker_.size())) {
      throw Error(ErrorCode::kInvalidArgument,
                  "empty token at id " + std::to_string(i));
    }
    if (!ids_.emplace(tok, static_cast<int>(i)).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate token '" + tok + "'");
    }
  }
}

std::vector<std::string> Vocabulary::specials() const {
  return {std::string(kUnknownToken), std::string(kPaddingToken)};
}

int Vocabulary::id(const std::string& token) const {
  auto it = ids_.find(token);
  return it == ids_.end() ? -1 : it->second;
}

const std::string& Vocabulary::token(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= tokens_.size()) {
    throw Error(ErrorCode::kInvalidId, "id " + std::to_string(id) +
                                           " outside vocabulary of size " +
                                           std::to_string(tokens_.size()));
  }
  return tokens_[id];
}

std::vector<std::string> TokenizeWord(const std::string& surface,
                                      const Segmenter& segmenter,
                                      std::string_view marker) {
  const Segmentation lower = segmenter.Segment(FoldCase(surface));
  return MarkWordInitial(RestoreCase(lower, surface).morphs, marker);
}

Vocabulary AssembleVocabulary(const SentenceStream& corpus,
                              const Segmenter& segmenter,
                              std::string_view marker) {
  if (!segmenter.trained()) {
    throw Error(ErrorCode::kNotTrained,
                segmenter.kind() + " segmenter is not trained");
  }
  CachedTokenizer tokenizer(segmenter, marker);
  std::map<std::string, int64_t> counts;
  for (const auto& sentence : corpus.sentences) {
    for (const auto& word : sentence) {
      for (const auto& tok : tokenizer.Tokens(word)) ++counts[tok];
    }
  }
  std::vector<std::pair<std::string, int64_t>> ranked(counts.begin(),
                                                      counts.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> tokens{std::string(kUnknownToken),
                                  std::string(kPaddingToken)};
  for (auto& [tok, count] : ranked) {
    if (tok != kUnknownToken && tok != kPaddingToken) {
      tokens.push_back(std::move(tok));
    }
  }
  return Vocabulary(std::move(tokens), std::string(marker));
}

IdSequences Encode(const SentenceStream& text, const Vocabulary& vocab,
                   const Segmenter& segmenter) {
  CachedTokenizer tokenizer(segmenter, vocab.marker());
  IdSequences out;
  out.reserve(text.size());
  for (const auto& sentence : text.sentences) {
    std::vector<int> ids;
    for (const auto& word : sentence) {
      for (const auto& tok : tokenizer.Tokens(word)) {
        const int id = vocab.id(tok);
        ids.push_back(id < 0 ? Vocabulary::kUnkId : id);
      }
    }
    out.push_back(std::move(ids));
  }
  return out;
}

SentenceStream Decode(const IdSequences& ids, const Vocabulary& vocab) {
  SentenceStream stream;
  stream.source_id = "decoded";
  const std::string& marker = vocab.marker();
  for (std::size_t s = 0; s < ids.size(); ++s) {
    std::vector<std::string> words;
    for (int id : ids[s]) {
      const std::string& tok = vocab.token(id);
      if (id == Vocabulary::kPadId) continue;
      if (id == Vocabulary::kUnkId) {
        if (words.empty()) words.emplace_back();
        words.back() += kUnknownGlyph;
      } else if (StartsWith(tok, marker)) {
        words.push_back(tok.substr(marker.size()));
      } else if (words.empty()) {
        words.push_back(tok);
      } else {
        words.back() += tok;
      }
    }
    if (words.empty()) {
      throw Error(ErrorCode::kEmptySentence,
                  "sentence " + std::to_string(s) + " decodes to no words");
    }
    stream.sentences.push_back(std::move(words));
  }
  return stream;
}

void WriteVocabulary(std::ostream& out, const Vocabulary& vocab) {
  for (const auto& tok : vocab.tokens()) out << tok << '\n';
}

Vocabulary ReadVocabulary(std::istream& in, const std::string& source_id,
                          std::string marker) {
  std::vector<std::string> tokens;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!IsValidUtf8(line)) {
      throw ParseError(source_id, line_no, "ill-formed UTF-8");
    }
    tokens.push_back(line);
  }
  try {
    return Vocabulary(std::move(tokens), std::move(marker));
  } catch (const Error& e) {
    throw ParseError(source_id, line_no, e.what());
  }
}

void WriteIds(std::ostream& out, const IdSequences& ids) {
  for (const auto& seq : ids) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (i) out << ' ';
      out << seq[i];
    }
    out << '\n';
  }
}

IdSequences ReadIds(std::istream& in, const std::string& source_id) {
  IdSequences out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<int> seq;
    std::istringstream fields(line);
    std::string field;
    while (fields >> field) {
      int id = 0;
      auto [ptr, ec] =
          std::from_chars(field.data(), field.data() + field.size(), id);
      if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw ParseError(source_id, line_no, "bad id '" + field + "'");
      }
      seq.push_back(id);
    }
    out.push_back(std::move(seq));
  }
  return out;
}

}  // namespace morphoseg
