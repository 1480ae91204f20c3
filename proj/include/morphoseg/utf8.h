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

#ifndef MORPHOSEG_UTF8_H_
#define MORPHOSEG_UTF8_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace morphoseg {

// Morphs, words and tokens are UTF-8 strings; every character-level
// operation in the toolkit works on code points, never on bytes.

bool IsValidUtf8(std::string_view text);

// Throws Error(kInvalidArgument) on ill-formed input.
std::u32string DecodeUtf8(std::string_view text);

std::string EncodeUtf8(char32_t c);
std::string EncodeUtf8(std::u32string_view text);

std::size_t CharLength(std::string_view text);

// Byte offsets of every code point boundary, including 0 and text.size().
std::vector<std::size_t> CharBoundaries(std::string_view text);

// One string per code point.
std::vector<std::string> SplitChars(std::string_view text);

// Per-code-point simple lowercase mapping. Never changes the number of code
// points, so positional case restoration is always possible.
std::string FoldCase(std::string_view text);

bool IsWhitespace(char32_t c);
bool IsPunctuation(char32_t c);

// Splits on Unicode whitespace. With strip_punct, punctuation code points are
// removed and tokens left empty are dropped.
std::vector<std::string> SplitWords(std::string_view line, bool strip_punct);

}  // namespace morphoseg

#endif  // MORPHOSEG_UTF8_H_
