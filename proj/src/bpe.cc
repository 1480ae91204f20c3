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

#include "morphoseg/bpe.h"

#include <istream>
#include <map>
#include <ostream>

#include "morphoseg/error.h"
#include "morphoseg/utf8.h"

namespace morphoseg {

namespace {

using Symbols = std::vector<std::string>;

// Non-overlapping occurrences of each adjacent pair, scanned left to right:
// "aaa" holds one (a, a).
std::map<TokenPair, int64_t> CountPairs(const Symbols& syms) {
  std::map<TokenPair, int64_t> counts;
  std::map<TokenPair, std::size_t> last_start;
  for (std::size_t i = 0; i + 1 < syms.size(); ++i) {
    TokenPair p{syms[i], syms[i + 1]};
    auto it = last_start.find(p);
    if (it != last_start.end() && it->second + 1 >= i) continue;
    last_start[p] = i;
    ++counts[p];
  }
  return counts;
}

// Replaces each leftmost non-overlapping occurrence of `pair`.
bool MergeInPlace(Symbols& syms, const TokenPair& pair) {
  Symbols out;
  out.reserve(syms.size());
  bool changed = false;
  for (std::size_t i = 0; i < syms.size();) {
    if (i + 1 < syms.size() && syms[i] == pair.first &&
        syms[i + 1] == pair.second) {
      out.push_back(pair.first + pair.second);
      i += 2;
      changed = true;
    } else {
      out.push_back(std::move(syms[i]));
      ++i;
    }
  }
  syms = std::move(out);
  return changed;
}

struct RankedPair {
  int64_t count;
  TokenPair pair;

  bool operator<(const RankedPair& o) const {
    if (count != o.count) return count > o.count;
    return pair < o.pair;
  }
};

class PairStatistics {
 public:
  void Change(const TokenPair& p, int64_t delta) {
    if (delta == 0) return;
    int64_t& c = counts_[p];
    if (c > 0) ranked_.erase(RankedPair{c, p});
    c += delta;
    if (c > 0) {
      ranked_.insert(RankedPair{c, p});
    } else {
      counts_.erase(p);
    }
  }

  const RankedPair* Best() const {
    return ranked_.empty() ? nullptr : &*ranked_.begin();
  }

 private:
  std::map<TokenPair, int64_t> counts_;
  std::set<RankedPair> ranked_;
};

}  // namespace

std::set<std::string> MergeTable::Inventory() const {
  std::set<std::string> inv = alphabet;
  for (const auto& [l, r] : merges) inv.insert(l + r);
  return inv;
}

void MergeTable::Validate() const {
  std::set<std::string> known = alphabet;
  std::set<TokenPair> seen;
  for (std::size_t i = 0; i < merges.size(); ++i) {
    const auto& [l, r] = merges[i];
    if (!known.count(l) || !known.count(r)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "merge " + std::to_string(i) + " (" + l + " " + r +
                      ") uses an unknown operand");
    }
    if (!seen.insert(merges[i]).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate merge (" + l + " " + r + ")");
    }
    known.insert(l + r);
  }
}

BpeModel TrainBpe(const WordList& words, std::size_t target_vocab) {
  struct Entry {
    Symbols syms;
    int64_t count;
  };
  std::vector<Entry> entries;
  BpeModel model;
  for (const auto& [word, count] : words.entries()) {
    Entry e{SplitChars(word), count};
    model.table.alphabet.insert(e.syms.begin(), e.syms.end());
    entries.push_back(std::move(e));
  }
  if (target_vocab < model.table.alphabet.size()) {
    throw Error(ErrorCode::kTargetTooSmall,
                "target " + std::to_string(target_vocab) +
                    " is below the alphabet size " +
                    std::to_string(model.table.alphabet.size()));
  }

  PairStatistics stats;
  std::map<TokenPair, std::set<std::size_t>> where;
  for (std::size_t idx = 0; idx < entries.size(); ++idx) {
    for (const auto& [p, n] : CountPairs(entries[idx].syms)) {
      stats.Change(p, n * entries[idx].count);
      where[p].insert(idx);
    }
  }

  std::set<std::string> inventory = model.table.alphabet;
  while (inventory.size() < target_vocab) {
    const RankedPair* best = stats.Best();
    if (best == nullptr || best->count < 2) break;
    const TokenPair pair = best->pair;
    model.table.merges.push_back(pair);
    inventory.insert(pair.first + pair.second);

    const std::set<std::size_t> affected = where[pair];
    for (std::size_t idx : affected) {
      Entry& e = entries[idx];
      const auto before = CountPairs(e.syms);
      MergeInPlace(e.syms, pair);
      const auto after = CountPairs(e.syms);
      for (const auto& [p, n] : before) {
        auto it = after.find(p);
        stats.Change(p, ((it == after.end() ? 0 : it->second) - n) * e.count);
        if (it == after.end()) where[p].erase(idx);
      }
      for (const auto& [p, n] : after) {
        if (!before.count(p)) {
          stats.Change(p, n * e.count);
          where[p].insert(idx);
        }
      }
    }
    where.erase(pair);
  }

  for (const auto& e : entries) {
    for (const auto& tok : e.syms) model.lexicon.Add(tok, e.count);
  }
  return model;
}

BpeEncoder::BpeEncoder(MergeTable table) : table_(std::move(table)) {
  table_.Validate();
  for (std::size_t i = 0; i < table_.merges.size(); ++i) {
    rank_.emplace(table_.merges[i], static_cast<int>(i));
  }
}

Segmentation BpeEncoder::Apply(const std::string& word) const {
  if (word.empty()) throw Error(ErrorCode::kEmptyWord, "cannot segment ''");
  Symbols syms = SplitChars(word);
  std::vector<bool> unknown(syms.size());
  bool any_unknown = false;
  for (std::size_t i = 0; i < syms.size(); ++i) {
    unknown[i] = !table_.alphabet.count(syms[i]);
    any_unknown = any_unknown || unknown[i];
  }

  // Skipping to the lowest-ranked applicable merge above the last one
  // applied is equivalent to sweeping the whole table in order, since the
  // merges in between are no-ops.
  int last = -1;
  for (;;) {
    int best = -1;
    for (std::size_t i = 0; i + 1 < syms.size(); ++i) {
      auto it = rank_.find(TokenPair{syms[i], syms[i + 1]});
      if (it != rank_.end() && it->second > last &&
          (best < 0 || it->second < best)) {
        best = it->second;
      }
    }
    if (best < 0) break;
    MergeInPlace(syms, table_.merges[best]);
    last = best;
  }

  Segmentation seg;
  seg.word = word;
  seg.morphs = std::move(syms);
  if (any_unknown) {
    // Unknown characters are never merge operands, so they survive as
    // singletons; flag them positionally.
    std::size_t char_index = 0;
    seg.fallback.assign(seg.morphs.size(), false);
    for (std::size_t m = 0; m < seg.morphs.size(); ++m) {
      const std::size_t len = CharLength(seg.morphs[m]);
      if (len == 1 && unknown[char_index]) seg.fallback[m] = true;
      char_index += len;
    }
  }
  return seg;
}

Segmentation ApplyBpe(const std::string& word, const MergeTable& table) {
  return BpeEncoder(table).Apply(word);
}

BpeSegmenter::BpeSegmenter(MergeTable table)
    : encoder_(std::make_shared<BpeEncoder>(std::move(table))),
      inventory_size_(encoder_->table().InventorySize()) {}

Segmentation BpeSegmenter::Segment(const std::string& word) const {
  if (!encoder_) throw Error(ErrorCode::kNotTrained, "bpe is not trained");
  return encoder_->Apply(word);
}

int64_t BpeSegmenter::optimizer_steps() const {
  return encoder_ ? static_cast<int64_t>(encoder_->table().merges.size()) : 0;
}

void WriteMergeTable(std::ostream& out, const MergeTable& table) {
  out << "#morphoseg-bpe v1\n";
  for (const auto& [l, r] : table.merges) out << l << ' ' << r << '\n';
}

MergeTable ReadMergeTable(std::istream& in, const std::string& source_id) {
  std::string line;
  if (!std::getline(in, line) || line != "#morphoseg-bpe v1") {
    throw ParseError(source_id, 1, "expected header '#morphoseg-bpe v1'");
  }
  MergeTable table;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto space = line.find(' ');
    if (space == std::string::npos || space == 0 || space + 1 == line.size() ||
        line.find(' ', space + 1) != std::string::npos) {
      throw ParseError(source_id, line_no, "expected 'left right'");
    }
    if (!IsValidUtf8(line)) {
      throw ParseError(source_id, line_no, "ill-formed UTF-8");
    }
    TokenPair pair{line.substr(0, space), line.substr(space + 1)};
    for (const auto& side : {pair.first, pair.second}) {
      for (auto& c : SplitChars(side)) table.alphabet.insert(std::move(c));
    }
    table.merges.push_back(std::move(pair));
  }
  try {
    table.Validate();
  } catch (const Error& e) {
    throw ParseError(source_id, line_no, e.what());
  }
  return table;
}

}  // namespace morphoseg
