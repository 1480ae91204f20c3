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

#ifndef MORPHOSEG_BPE_H_
#define MORPHOSEG_BPE_H_

#include <iosfwd>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "morphoseg/corpus.h"
#include "morphoseg/lexicon.h"
#include "morphoseg/segmenter.h"

namespace morphoseg {

using TokenPair = std::pair<std::string, std::string>;

struct MergeTable {
  std::vector<TokenPair> merges;  // training order
  std::set<std::string> alphabet;

  // alphabet plus every merge result.
  std::set<std::string> Inventory() const;
  std::size_t InventorySize() const { return Inventory().size(); }

  // Throws kInvalidArgument if an operand is neither an alphabet symbol nor
  // the result of an earlier merge, or a merge repeats.
  void Validate() const;
};

struct BpeModel {
  MergeTable table;
  // Token occurrences over the word list under the final merges.
  Lexicon lexicon;
};

// Starts from characters and repeatedly merges the adjacent pair with the
// highest count-weighted number of non-overlapping occurrences (ties by
// (left, right) in code point order). Stops when the inventory reaches
// target_vocab or no pair occurs at least twice. Throws kTargetTooSmall if
// target_vocab is below the alphabet size.
BpeModel TrainBpe(const WordList& words, std::size_t target_vocab);

// Applies merges in training order, each leftmost-first without overlap.
class BpeEncoder {
 public:
  explicit BpeEncoder(MergeTable table);

  // Characters outside the alphabet stay single tokens flagged as fallback.
  Segmentation Apply(const std::string& word) const;

  const MergeTable& table() const { return table_; }

 private:
  struct PairHash {
    std::size_t operator()(const TokenPair& p) const {
      return std::hash<std::string>()(p.first) * 31 +
             std::hash<std::string>()(p.second);
    }
  };

  MergeTable table_;
  std::unordered_map<TokenPair, int, PairHash> rank_;
};

Segmentation ApplyBpe(const std::string& word, const MergeTable& table);

class BpeSegmenter : public Segmenter {
 public:
  BpeSegmenter() = default;
  explicit BpeSegmenter(MergeTable table);

  std::string kind() const override { return "bpe"; }
  bool trained() const override { return encoder_ != nullptr; }
  Segmentation Segment(const std::string& word) const override;
  std::size_t inventory_size() const override { return inventory_size_; }
  int64_t optimizer_steps() const override;

 private:
  std::shared_ptr<const BpeEncoder> encoder_;
  std::size_t inventory_size_ = 0;
};

// Header `#morphoseg-bpe v1`, then one `left<SPACE>right` per line. The
// alphabet is not stored; a loaded table takes the characters of its merge
// operands as alphabet.
void WriteMergeTable(std::ostream& out, const MergeTable& table);
MergeTable ReadMergeTable(std::istream& in, const std::string& source_id);

}  // namespace morphoseg

#endif  // MORPHOSEG_BPE_H_
