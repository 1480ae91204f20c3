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

#ifndef MORPHOSEG_MDL_H_
#define MORPHOSEG_MDL_H_

#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "morphoseg/lexicon.h"

namespace morphoseg {

inline double XLog2X(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Maximum-likelihood code length of a count vector:
//   sum_i c_i * log2(N / c_i),  N = sum_i c_i.
// Throws kInvalidCounts on an empty vector or any count <= 0.
double CodeLengthMultinomial(std::span<const int64_t> counts);

// Running form of CodeLengthMultinomial for trainers that change one count at
// a time: bits = N log2 N - sum c log2 c.
class CodeLengthAccumulator {
 public:
  void Change(int64_t old_count, int64_t new_count) {
    total_ += new_count - old_count;
    sum_xlogx_ += XLog2X(static_cast<double>(new_count)) -
                  XLog2X(static_cast<double>(old_count));
  }
  int64_t total() const { return total_; }
  double bits() const {
    return XLog2X(static_cast<double>(total_)) - sum_xlogx_;
  }

 private:
  int64_t total_ = 0;
  double sum_xlogx_ = 0.0;
};

// Named parts of a two-part (or multi-part) code length.
struct CodeLengthReport {
  double total_bits = 0.0;
  std::map<std::string, double> parts;

  static CodeLengthReport FromParts(std::map<std::string, double> parts);
  double part(const std::string& name) const;
};

// Character distribution used to spell morphs, with a dedicated
// end-of-morph symbol.
struct CharCounts {
  std::map<char32_t, int64_t> chars;
  int64_t end = 0;

  int64_t total() const;
};

// Every morph type contributes its characters once plus one end marker.
CharCounts PooledCharCounts(const Lexicon& lexicon);

// Sum over morph types of the ML code length of spelling the morph followed
// by the end marker. Throws kUnknownChar if a character is missing from
// `chars`.
double LexiconStringCost(const Lexicon& lexicon, const CharCounts& chars);

// Spelling cost of one morph including its end marker. Characters absent
// from `chars` cost log2(total + 1) bits instead of failing; decoders use
// this for out-of-lexicon fallback.
double SpellingCost(std::string_view morph, const CharCounts& chars);

}  // namespace morphoseg

#endif  // MORPHOSEG_MDL_H_
