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

#include "morphoseg/utf8.h"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "morphoseg/error.h"

namespace morphoseg {

bool IsValidUtf8(std::string_view text) {
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const int32_t length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) return false;
  }
  return true;
}

std::u32string DecodeUtf8(std::string_view text) {
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const int32_t length = static_cast<int32_t>(text.size());
  std::u32string out;
  out.reserve(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) {
      throw Error(ErrorCode::kInvalidArgument, "ill-formed UTF-8 input");
    }
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

std::string EncodeUtf8(char32_t c) {
  uint8_t buf[U8_MAX_LENGTH];
  int32_t n = 0;
  UBool error = false;
  U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
  if (error) throw Error(ErrorCode::kInvalidArgument, "invalid code point");
  return std::string(reinterpret_cast<const char*>(buf), n);
}

std::string EncodeUtf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : text) out += EncodeUtf8(c);
  return out;
}

std::size_t CharLength(std::string_view text) {
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const int32_t length = static_cast<int32_t>(text.size());
  std::size_t n = 0;
  int32_t i = 0;
  while (i < length) {
    U8_FWD_1(s, i, length);
    ++n;
  }
  return n;
}

std::vector<std::size_t> CharBoundaries(std::string_view text) {
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const int32_t length = static_cast<int32_t>(text.size());
  std::vector<std::size_t> out{0};
  int32_t i = 0;
  while (i < length) {
    U8_FWD_1(s, i, length);
    out.push_back(static_cast<std::size_t>(i));
  }
  return out;
}

std::vector<std::string> SplitChars(std::string_view text) {
  const auto bounds = CharBoundaries(text);
  std::vector<std::string> out;
  out.reserve(bounds.size() - 1);
  for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
    out.emplace_back(text.substr(bounds[k], bounds[k + 1] - bounds[k]));
  }
  return out;
}

std::string FoldCase(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : DecodeUtf8(text)) {
    out += EncodeUtf8(static_cast<char32_t>(u_tolower(static_cast<UChar32>(c))));
  }
  return out;
}

bool IsWhitespace(char32_t c) {
  return u_isUWhiteSpace(static_cast<UChar32>(c));
}

bool IsPunctuation(char32_t c) { return u_ispunct(static_cast<UChar32>(c)); }

std::vector<std::string> SplitWords(std::string_view line, bool strip_punct) {
  std::vector<std::string> words;
  std::u32string current;
  auto flush = [&] {
    if (!current.empty()) words.push_back(EncodeUtf8(current));
    current.clear();
  };
  for (char32_t c : DecodeUtf8(line)) {
    if (IsWhitespace(c)) {
      flush();
    } else if (!(strip_punct && IsPunctuation(c))) {
      current.push_back(c);
    }
  }
  flush();
  return words;
}

}  // namespace morphoseg
