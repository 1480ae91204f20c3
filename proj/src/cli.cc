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

#include "morphoseg/cli.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "morphoseg/bpe.h"
#include "morphoseg/corpus.h"
#include "morphoseg/error.h"
#include "morphoseg/lexicon.h"
#include "morphoseg/lmeval.h"
#include "morphoseg/morfessor.h"
#include "morphoseg/rng.h"
#include "morphoseg/segmenter.h"
#include "morphoseg/statemorph.h"
#include "morphoseg/utf8.h"
#include "morphoseg/vocabulary.h"

namespace morphoseg {

namespace {

// Child seed streams of the root seed. Shared by every subcommand so that
// e.g. `compare` trains the same StateMorph model as `train-statemorph`.
enum SeedStream : uint64_t { kSplitStream = 0, kMorfessorStream = 1, kStateMorphStream = 2 };

constexpr uint64_t kDefaultSeed = 42;

std::string Fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::ifstream OpenIn(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  return in;
}

// Renders to memory first so a failed run never leaves a partial file.
void WriteFile(const std::string& path,
               const std::function<void(std::ostream&)>& render) {
  std::ostringstream buf;
  render(buf);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << buf.str();
  if (!out.flush()) throw Error(ErrorCode::kIoError, "cannot write " + path);
}

WordList LoadWordList(const std::string& path) {
  auto in = OpenIn(path);
  return ReadWordList(in, path);
}

std::shared_ptr<const Segmenter> LoadSegmenter(const std::string& kind,
                                               const std::string& path) {
  auto in = OpenIn(path);
  if (kind == "char") {
    return std::make_shared<CharSegmenter>(ReadWordList(in, path));
  }
  if (kind == "bpe") {
    return std::make_shared<BpeSegmenter>(ReadMergeTable(in, path));
  }
  if (kind == "morfessor") {
    return std::make_shared<MorfessorSegmenter>(ReadMorfessorModel(in, path));
  }
  if (kind == "statemorph") {
    return std::make_shared<StateMorphSegmenter>(ReadStateNetwork(in, path));
  }
  throw Error(ErrorCode::kUsageError, "unknown segmenter kind '" + kind + "'");
}

std::vector<Segmentation> ReadSegmentations(const std::string& path) {
  auto in = OpenIn(path);
  std::vector<Segmentation> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || !IsValidUtf8(line)) {
      throw ParseError(path, line_no, "expected word<TAB>morph morph ...");
    }
    std::vector<std::string> morphs;
    std::istringstream fields(line.substr(tab + 1));
    for (std::string m; fields >> m;) morphs.push_back(m);
    try {
      out.push_back(MakeSegmentation(line.substr(0, tab), morphs));
    } catch (const Error& e) {
      throw ParseError(path, line_no, e.what());
    }
  }
  return out;
}

struct Options {
  uint64_t seed = kDefaultSeed;
  // extract
  std::string input;
  std::string output;
  int64_t min_count = 1;
  bool strip_punct = false;
  std::string train_out, valid_out, test_out;
  std::vector<double> ratios = {0.8, 0.1, 0.1};
  // training
  std::string words;
  std::size_t vocab_size = 0;
  double epsilon = 0.1;
  int max_epochs = 100;
  int states = 5;
  AnnealSchedule schedule;
  // prune
  std::string model;
  std::string lexicon;
  std::size_t target = 0;
  // vocab / encode / decode / eval
  std::string segmenter = "bpe";
  std::string corpus;
  std::string vocab;
  std::string train;
  std::string valid;
  int order = 2;
  double delta = 0.1;
  std::string predicted;
  std::string gold;
  std::vector<std::string> segmenters;
  std::string output_tsv;
  std::string output_json;
};

void AddSeed(CLI::App* sub, Options& o) {
  sub->add_option("--seed", o.seed, "Root seed")->capture_default_str();
}

void AddSchedule(CLI::App* sub, Options& o) {
  sub->add_option("--states", o.states, "Number of states K")
      ->capture_default_str();
  sub->add_option("--t-initial", o.schedule.t_initial, "Initial temperature")
      ->capture_default_str();
  sub->add_option("--alpha", o.schedule.alpha, "Cooling factor")
      ->capture_default_str();
  sub->add_option("--t-min", o.schedule.t_min, "Final temperature")
      ->capture_default_str();
  sub->add_option("--proposals-per-temp", o.schedule.proposals_per_temp,
                  "Proposals per level (0: number of word types)")
      ->capture_default_str();
  sub->add_option("--max-levels", o.schedule.max_levels,
                  "Hard cap on temperature levels")
      ->capture_default_str();
}

void AddMorfessor(CLI::App* sub, Options& o) {
  sub->add_option("--epsilon", o.epsilon, "Convergence threshold, bits per type")
      ->capture_default_str();
  sub->add_option("--max-epochs", o.max_epochs, "Epoch cap")
      ->capture_default_str();
}

void AddSegmenterModel(CLI::App* sub, Options& o) {
  sub->add_option("--segmenter", o.segmenter,
                  "Segmenter kind: char, bpe, morfessor or statemorph")
      ->check(CLI::IsMember({"char", "bpe", "morfessor", "statemorph"}))
      ->capture_default_str();
  sub->add_option("--model", o.model,
                  "Model file (the word list for char)")
      ->required();
}

MorfessorOptions MorfessorOpts(const Options& o) {
  MorfessorOptions opts;
  opts.epsilon = o.epsilon;
  opts.max_epochs = o.max_epochs;
  opts.seed = DeriveSeed(o.seed, kMorfessorStream);
  return opts;
}

AnnealSchedule ScheduleOpts(const Options& o) {
  AnnealSchedule schedule = o.schedule;
  schedule.seed = DeriveSeed(o.seed, kStateMorphStream);
  return schedule;
}

// --- subcommands -----------------------------------------------------------

void RunExtract(const Options& o, std::ostream& out) {
  if (o.ratios.size() != 3) {
    throw Error(ErrorCode::kUsageError, "--ratios takes three values");
  }
  const bool split =
      !o.train_out.empty() || !o.valid_out.empty() || !o.test_out.empty();
  if (split && (o.train_out.empty() || o.valid_out.empty() || o.test_out.empty())) {
    throw Error(ErrorCode::kUsageError,
                "--train-out, --valid-out and --test-out go together");
  }
  SentenceStream stream = ReadSentencesFile(o.input, o.strip_punct);
  if (split) {
    CorpusSplit parts = SplitCorpus(
        stream, {o.ratios[0], o.ratios[1], o.ratios[2]},
        DeriveSeed(o.seed, kSplitStream));
    WriteFile(o.train_out, [&](std::ostream& f) { WriteSentences(f, parts.train); });
    WriteFile(o.valid_out, [&](std::ostream& f) { WriteSentences(f, parts.valid); });
    WriteFile(o.test_out, [&](std::ostream& f) { WriteSentences(f, parts.test); });
    stream = std::move(parts.train);
  }
  const WordList words = ExtractWordList(stream, o.min_count);
  WriteFile(o.output, [&](std::ostream& f) { WriteWordList(f, words); });
  out << "extract types=" << words.total_types()
      << " tokens=" << words.total_tokens() << " sentences=" << stream.size()
      << '\n';
}

void RunTrainBpe(const Options& o, std::ostream& out) {
  const BpeModel model = TrainBpe(LoadWordList(o.words), o.vocab_size);
  WriteFile(o.output, [&](std::ostream& f) { WriteMergeTable(f, model.table); });
  out << "train-bpe merges=" << model.table.merges.size()
      << " vocab_size=" << model.table.InventorySize() << '\n';
}

void RunTrainMorfessor(const Options& o, std::ostream& out) {
  const MorfessorModel model = TrainMorfessor(LoadWordList(o.words), MorfessorOpts(o));
  WriteFile(o.output, [&](std::ostream& f) { WriteMorfessorModel(f, model); });
  out << "train-morfessor cost_bits=" << Fmt(model.cost.total_bits)
      << " vocab_size=" << model.lexicon.size()
      << " epochs=" << model.trace.epochs
      << " steps=" << model.trace.resplit_steps << '\n';
}

void RunTrainStateMorph(const Options& o, std::ostream& out) {
  const StateMorphModel model =
      TrainStateMorph(LoadWordList(o.words), o.states, ScheduleOpts(o));
  WriteFile(o.output, [&](std::ostream& f) { WriteStateNetwork(f, model.network); });
  out << "train-statemorph cost_bits=" << Fmt(model.cost.total_bits)
      << " vocab_size=" << model.network.lexicon.size()
      << " proposals=" << model.trace.proposals
      << " accepted=" << model.trace.accepted << '\n';
}

void RunPrune(const Options& o, std::ostream& out) {
  if (o.model.empty() == o.lexicon.empty()) {
    throw Error(ErrorCode::kUsageError, "give exactly one of --model and --lexicon");
  }
  if (!o.model.empty()) {
    auto in = OpenIn(o.model);
    const StateNetwork net = ReadStateNetwork(in, o.model);
    const StateNetwork pruned = PruneStateMorph(net, o.target);
    WriteFile(o.output, [&](std::ostream& f) { WriteStateNetwork(f, pruned); });
    out << "prune vocab_size=" << pruned.lexicon.size()
        << " before=" << net.lexicon.size() << '\n';
    return;
  }
  auto in = OpenIn(o.lexicon);
  const Lexicon lex = ReadLexicon(in, o.lexicon);
  const Lexicon pruned = PruneLexicon(lex, o.target);
  WriteFile(o.output, [&](std::ostream& f) { WriteLexicon(f, pruned); });
  out << "prune vocab_size=" << pruned.size() << " before=" << lex.size() << '\n';
}

void RunBuildVocab(const Options& o, std::ostream& out) {
  const auto segmenter = LoadSegmenter(o.segmenter, o.model);
  const Vocabulary vocab =
      AssembleVocabulary(ReadSentencesFile(o.corpus, o.strip_punct), *segmenter);
  WriteFile(o.output, [&](std::ostream& f) { WriteVocabulary(f, vocab); });
  out << "build-vocab tokens=" << vocab.size() << '\n';
}

Vocabulary LoadVocabulary(const std::string& path) {
  auto in = OpenIn(path);
  return ReadVocabulary(in, path);
}

void RunEncode(const Options& o, std::ostream& out) {
  const auto segmenter = LoadSegmenter(o.segmenter, o.model);
  const Vocabulary vocab = LoadVocabulary(o.vocab);
  const IdSequences ids =
      Encode(ReadSentencesFile(o.input, o.strip_punct), vocab, *segmenter);
  WriteFile(o.output, [&](std::ostream& f) { WriteIds(f, ids); });
  std::size_t tokens = 0, unknown = 0;
  for (const auto& s : ids) {
    tokens += s.size();
    for (int id : s) unknown += id == Vocabulary::kUnkId;
  }
  out << "encode sentences=" << ids.size() << " tokens=" << tokens
      << " unk=" << unknown << '\n';
}

void RunDecode(const Options& o, std::ostream& out) {
  const Vocabulary vocab = LoadVocabulary(o.vocab);
  auto in = OpenIn(o.input);
  const SentenceStream text = Decode(ReadIds(in, o.input), vocab);
  WriteFile(o.output, [&](std::ostream& f) { WriteSentences(f, text); });
  out << "decode sentences=" << text.size() << '\n';
}

void RunEvalPpl(const Options& o, std::ostream& out) {
  const auto segmenter = LoadSegmenter(o.segmenter, o.model);
  const SentenceStream train = ReadSentencesFile(o.train, o.strip_punct);
  const SentenceStream valid = ReadSentencesFile(o.valid, o.strip_punct);
  const Vocabulary vocab = AssembleVocabulary(train, *segmenter);
  const NgramLm lm = TrainNgram(Encode(train, vocab, *segmenter), vocab,
                                o.order, o.delta);
  std::vector<int64_t> words_per_sentence;
  for (const auto& s : valid.sentences) words_per_sentence.push_back(s.size());
  const PerplexityReport r =
      Perplexity(lm, Encode(valid, vocab, *segmenter), words_per_sentence);
  if (!o.output.empty()) {
    WriteFile(o.output, [&](std::ostream& f) {
      f << "per_token_ppl\t" << Fmt(r.per_token_ppl) << "\nper_word_ppl\t"
        << Fmt(r.per_word_ppl) << "\ntoken_count\t" << r.token_count
        << "\nword_count\t" << r.word_count << "\noov_rate\t"
        << Fmt(r.oov_rate) << '\n';
    });
  }
  out << "eval-ppl per_token_ppl=" << Fmt(r.per_token_ppl)
      << " per_word_ppl=" << Fmt(r.per_word_ppl)
      << " oov_rate=" << Fmt(r.oov_rate) << '\n';
}

void RunEvalBoundaries(const Options& o, std::ostream& out) {
  const std::vector<Segmentation> gold = ReadSegmentations(o.gold);
  std::vector<Segmentation> predicted;
  if (!o.predicted.empty()) {
    if (!o.model.empty()) {
      throw Error(ErrorCode::kUsageError, "give --predicted or --model, not both");
    }
    predicted = ReadSegmentations(o.predicted);
  } else if (!o.model.empty()) {
    const auto segmenter = LoadSegmenter(o.segmenter, o.model);
    for (const auto& g : gold) predicted.push_back(segmenter->Segment(g.word));
  } else {
    throw Error(ErrorCode::kUsageError, "give --predicted or --model");
  }
  const BoundaryScore s = ScoreBoundaries(predicted, gold);
  if (!o.output.empty()) {
    WriteFile(o.output, [&](std::ostream& f) {
      f << "precision\t" << Fmt(s.precision) << "\nrecall\t" << Fmt(s.recall)
        << "\nf1\t" << Fmt(s.f1) << '\n';
    });
  }
  out << "eval-boundaries precision=" << Fmt(s.precision)
      << " recall=" << Fmt(s.recall) << " f1=" << Fmt(s.f1) << '\n';
}

// A --segmenter value for compare: `[name=]kind[:arg]` with kinds char,
// bpe:<size>, bpe:match=<name>, morfessor, statemorph, smp:<size>, or a
// model file as bpe-model:<path>, morfessor-model:<path>,
// statemorph-model:<path>.
struct CompareSpec {
  std::string name;
  std::string kind;
  std::string arg;
};

CompareSpec ParseCompareSpec(const std::string& text) {
  CompareSpec spec;
  std::string body = text;
  const auto eq = text.find('=');
  const auto colon = text.find(':');
  if (eq != std::string::npos && (colon == std::string::npos || eq < colon)) {
    spec.name = text.substr(0, eq);
    body = text.substr(eq + 1);
  } else {
    spec.name = text;
  }
  const auto c = body.find(':');
  spec.kind = body.substr(0, c);
  if (c != std::string::npos) spec.arg = body.substr(c + 1);
  if (spec.name.empty() || spec.kind.empty()) {
    throw Error(ErrorCode::kUsageError, "bad segmenter spec '" + text + "'");
  }
  return spec;
}

std::size_t ParseSize(const std::string& text, const std::string& spec) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || text.empty() || text[0] == '-') {
    throw Error(ErrorCode::kUsageError, "bad size in segmenter spec '" + spec + "'");
  }
  return static_cast<std::size_t>(v);
}

void RunCompare(const Options& o, std::ostream& out) {
  const SentenceStream train = ReadSentencesFile(o.train, o.strip_punct);
  const SentenceStream valid = ReadSentencesFile(o.valid, o.strip_punct);
  const WordList words = ExtractWordList(train);

  std::map<std::string, Lexicon> lexicons;
  std::unique_ptr<StateMorphModel> statemorph;
  auto trained_statemorph = [&]() -> const StateMorphModel& {
    if (!statemorph) {
      statemorph = std::make_unique<StateMorphModel>(
          TrainStateMorph(words, o.states, ScheduleOpts(o)));
    }
    return *statemorph;
  };

  std::vector<NamedSegmenter> named;
  for (const std::string& text : o.segmenters) {
    const CompareSpec spec = ParseCompareSpec(text);
    if (lexicons.count(spec.name) ||
        std::any_of(named.begin(), named.end(),
                    [&](const auto& n) { return n.name == spec.name; })) {
      throw Error(ErrorCode::kUsageError, "duplicate segmenter name '" + spec.name + "'");
    }
    std::shared_ptr<const Segmenter> seg;
    if (spec.kind == "char") {
      seg = std::make_shared<CharSegmenter>(words);
    } else if (spec.kind == "bpe") {
      std::size_t size = 0;
      if (spec.arg.rfind("match=", 0) == 0) {
        auto it = lexicons.find(spec.arg.substr(6));
        if (it == lexicons.end()) {
          throw Error(ErrorCode::kUsageError,
                      "'" + text + "' must follow the segmenter it matches");
        }
        size = MatchVocabSize(it->second);
      } else {
        size = ParseSize(spec.arg, text);
      }
      BpeModel model = TrainBpe(words, size);
      lexicons[spec.name] = model.lexicon;
      seg = std::make_shared<BpeSegmenter>(std::move(model.table));
    } else if (spec.kind == "morfessor") {
      MorfessorModel model = TrainMorfessor(words, MorfessorOpts(o));
      lexicons[spec.name] = model.lexicon;
      seg = std::make_shared<MorfessorSegmenter>(std::move(model));
    } else if (spec.kind == "statemorph" || spec.kind == "smp") {
      const StateMorphModel& model = trained_statemorph();
      StateNetwork net = model.network;
      if (spec.kind == "smp") net = PruneStateMorph(net, ParseSize(spec.arg, text));
      lexicons[spec.name] = net.lexicon;
      seg = std::make_shared<StateMorphSegmenter>(std::move(net),
                                                  model.trace.proposals);
    } else if (spec.kind == "bpe-model" || spec.kind == "morfessor-model" ||
               spec.kind == "statemorph-model") {
      seg = LoadSegmenter(spec.kind.substr(0, spec.kind.size() - 6), spec.arg);
    } else {
      throw Error(ErrorCode::kUsageError, "unknown segmenter kind in '" + text + "'");
    }
    named.push_back({spec.name, std::move(seg)});
  }

  const auto rows = CompareSegmenters(train, valid, named, o.order, o.delta);
  if (!o.output_tsv.empty()) {
    WriteFile(o.output_tsv, [&](std::ostream& f) { WriteComparisonTsv(f, rows); });
  }
  if (!o.output_json.empty()) {
    WriteFile(o.output_json, [&](std::ostream& f) { WriteComparisonJson(f, rows); });
  }
  out << "compare";
  for (const auto& r : rows) {
    out << ' ' << r.segmenter << ":vocab_size=" << r.vocab_size
        << ",per_word_ppl=" << Fmt(r.per_word_ppl);
  }
  out << '\n';
}

// --- config files and provenance ---------------------------------------------

using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

ConfigEntries ReadConfig(const std::string& path) {
  auto in = OpenIn(path);
  ConfigEntries entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ParseError(path, line_no, "expected key=value");
    }
    entries.emplace_back(line.substr(0, eq), line.substr(eq + 1));
  }
  return entries;
}

std::string LongName(const std::string& arg) {
  if (arg.rfind("--", 0) != 0) return "";
  return arg.substr(2, arg.find('=') == std::string::npos
                           ? std::string::npos
                           : arg.find('=') - 2);
}

void PrintProvenance(const CLI::App& sub, const Options& o, std::ostream& err) {
  err << "# morphoseg provenance\n"
      << "version=" << kVersion << '\n'
      << "subcommand=" << sub.get_name() << '\n';
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string name = opt->get_lnames().front();
    if (name == "help") continue;
    if (opt->count() > 0) {
      for (const std::string& v : opt->results()) err << name << '=' << v << '\n';
    } else {
      const std::string def = opt->get_default_str();
      if (!def.empty() && def != "[]") err << name << '=' << def << '\n';
    }
  }
  err << "# seed.split=" << DeriveSeed(o.seed, kSplitStream) << '\n'
      << "# seed.morfessor=" << DeriveSeed(o.seed, kMorfessorStream) << '\n'
      << "# seed.statemorph=" << DeriveSeed(o.seed, kStateMorphStream) << '\n';
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUsageError:
    case ErrorCode::kInvalidArgument:
      return 1;
    case ErrorCode::kInconsistentModel:
    case ErrorCode::kInconsistentNetwork:
      return 3;
    default:
      return 2;
  }
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Sub-word segmentation toolkit", "morphoseg"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.allow_windows_style_options(false);

  std::map<std::string, std::function<void()>> handlers;
  auto add = [&](const std::string& name, const std::string& help,
                 std::function<void()> fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    handlers[name] = std::move(fn);
    return sub;
  };

  CLI::App* extract = add("extract", "Lowercased word list (and optional split)",
                          [&] { RunExtract(o, out); });
  extract->add_option("--input", o.input, "Corpus, one sentence per line")->required();
  extract->add_option("--output", o.output, "Word list TSV")->required();
  extract->add_option("--min-count", o.min_count, "Drop rarer words")
      ->capture_default_str();
  extract->add_flag("--strip-punct", o.strip_punct, "Strip punctuation characters")
      ->capture_default_str();
  extract->add_option("--train-out", o.train_out, "Train split");
  extract->add_option("--valid-out", o.valid_out, "Validation split");
  extract->add_option("--test-out", o.test_out, "Test split");
  extract->add_option("--ratios", o.ratios, "Split ratios")
      ->delimiter(',')
      ->expected(3)
      ->capture_default_str();
  AddSeed(extract, o);

  CLI::App* bpe = add("train-bpe", "Train BPE merges", [&] { RunTrainBpe(o, out); });
  bpe->add_option("--words", o.words, "Word list TSV")->required();
  bpe->add_option("--vocab-size", o.vocab_size, "Target inventory size")->required();
  bpe->add_option("--output", o.output, "Merge file")->required();
  AddSeed(bpe, o);

  CLI::App* morf = add("train-morfessor", "Train the MDL baseline",
                       [&] { RunTrainMorfessor(o, out); });
  morf->add_option("--words", o.words, "Word list TSV")->required();
  morf->add_option("--output", o.output, "Model file")->required();
  AddMorfessor(morf, o);
  AddSeed(morf, o);

  CLI::App* sm = add("train-statemorph", "Train StateMorph by annealing",
                     [&] { RunTrainStateMorph(o, out); });
  sm->add_option("--words", o.words, "Word list TSV")->required();
  sm->add_option("--output", o.output, "Network file")->required();
  AddSchedule(sm, o);
  AddSeed(sm, o);

  CLI::App* prune = add("prune", "Drop the least frequent morphs",
                        [&] { RunPrune(o, out); });
  prune->add_option("--model", o.model, "StateMorph network file");
  prune->add_option("--lexicon", o.lexicon, "Lexicon TSV");
  prune->add_option("--target", o.target, "Target lexicon size")->required();
  prune->add_option("--output", o.output, "Output file")->required();
  AddSeed(prune, o);

  CLI::App* vocab = add("build-vocab", "Assemble the token vocabulary",
                        [&] { RunBuildVocab(o, out); });
  vocab->add_option("--corpus", o.corpus, "Training sentences")->required();
  AddSegmenterModel(vocab, o);
  vocab->add_option("--output", o.output, "Vocabulary file")->required();
  vocab->add_flag("--strip-punct", o.strip_punct, "Strip punctuation characters")
      ->capture_default_str();
  AddSeed(vocab, o);

  CLI::App* encode = add("encode", "Sentences to ids", [&] { RunEncode(o, out); });
  encode->add_option("--input", o.input, "Sentences")->required();
  encode->add_option("--vocab", o.vocab, "Vocabulary file")->required();
  AddSegmenterModel(encode, o);
  encode->add_option("--output", o.output, "Id file")->required();
  encode->add_flag("--strip-punct", o.strip_punct, "Strip punctuation characters")
      ->capture_default_str();
  AddSeed(encode, o);

  CLI::App* decode = add("decode", "Ids to sentences", [&] { RunDecode(o, out); });
  decode->add_option("--input", o.input, "Id file")->required();
  decode->add_option("--vocab", o.vocab, "Vocabulary file")->required();
  decode->add_option("--output", o.output, "Sentences")->required();
  AddSeed(decode, o);

  CLI::App* ppl = add("eval-ppl", "N-gram perplexity of one segmenter",
                      [&] { RunEvalPpl(o, out); });
  ppl->add_option("--train", o.train, "Training sentences")->required();
  ppl->add_option("--valid", o.valid, "Evaluation sentences")->required();
  AddSegmenterModel(ppl, o);
  ppl->add_option("--order", o.order, "N-gram order")->capture_default_str();
  ppl->add_option("--delta", o.delta, "Add-delta constant")->capture_default_str();
  ppl->add_option("--output", o.output, "Report TSV");
  ppl->add_flag("--strip-punct", o.strip_punct, "Strip punctuation characters")
      ->capture_default_str();
  AddSeed(ppl, o);

  CLI::App* bounds = add("eval-boundaries", "Boundary precision/recall/F1",
                         [&] { RunEvalBoundaries(o, out); });
  bounds->add_option("--gold", o.gold, "Gold word<TAB>morphs file")->required();
  bounds->add_option("--predicted", o.predicted, "Predicted word<TAB>morphs file");
  bounds->add_option("--segmenter", o.segmenter, "Segmenter kind for --model")
      ->check(CLI::IsMember({"char", "bpe", "morfessor", "statemorph"}))
      ->capture_default_str();
  bounds->add_option("--model", o.model, "Segment the gold words with this model");
  bounds->add_option("--output", o.output, "Score TSV");
  AddSeed(bounds, o);

  CLI::App* compare = add("compare", "Perplexity table across segmenters",
                          [&] { RunCompare(o, out); });
  compare->add_option("--train", o.train, "Training sentences")->required();
  compare->add_option("--valid", o.valid, "Evaluation sentences")->required();
  compare->add_option("--segmenter", o.segmenters,
                      "[name=]kind[:arg]; repeat for each row")
      ->required();
  compare->add_option("--order", o.order, "N-gram order")->capture_default_str();
  compare->add_option("--delta", o.delta, "Add-delta constant")->capture_default_str();
  compare->add_option("--output-tsv", o.output_tsv, "Table as TSV");
  compare->add_option("--output-json", o.output_json, "Table as JSON");
  compare->add_flag("--strip-punct", o.strip_punct, "Strip punctuation characters")
      ->capture_default_str();
  AddMorfessor(compare, o);
  AddSchedule(compare, o);
  AddSeed(compare, o);

  try {
    // Pull out --config, then splice its entries in front of the user's
    // own flags; flags given on the command line take precedence.
    std::vector<std::string> user;
    std::string config_path;
    for (int i = 1; i < argc; ++i) {
      const std::string arg = argv[i];
      if (arg == "--config") {
        if (i + 1 >= argc) throw Error(ErrorCode::kUsageError, "--config needs a file");
        config_path = argv[++i];
      } else if (arg.rfind("--config=", 0) == 0) {
        config_path = arg.substr(9);
      } else {
        user.push_back(arg);
      }
    }
    std::vector<std::string> args;
    if (!config_path.empty()) {
      const ConfigEntries entries = ReadConfig(config_path);
      std::string name;
      if (!user.empty() && handlers.count(user.front())) {
        name = user.front();
        user.erase(user.begin());
      } else {
        for (const auto& [k, v] : entries) {
          if (k == "subcommand") name = v;
        }
      }
      if (name.empty() || !handlers.count(name)) {
        throw Error(ErrorCode::kUsageError, "no subcommand given");
      }
      std::set<std::string> given;
      for (const auto& a : user) {
        if (!LongName(a).empty()) given.insert(LongName(a));
      }
      const CLI::App* sub = app.get_subcommand(name);
      args.push_back(name);
      for (const auto& [k, v] : entries) {
        if (k == "subcommand" || given.count(k)) continue;
        if (sub->get_option_no_throw("--" + k) == nullptr) continue;
        args.push_back("--" + k + "=" + v);
      }
      args.insert(args.end(), user.begin(), user.end());
    } else {
      args = std::move(user);
    }

    std::vector<const char*> cargs = {argc > 0 ? argv[0] : "morphoseg"};
    for (const auto& a : args) cargs.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? 0 : 1;
    }

    for (CLI::App* sub : app.get_subcommands()) {
      PrintProvenance(*sub, o, err);
      handlers.at(sub->get_name())();
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace morphoseg
