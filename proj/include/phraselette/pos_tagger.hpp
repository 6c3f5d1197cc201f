// Copyright 2026 The Phraselette Authors.
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

#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "phraselette/pos_tag.hpp"
#include "phraselette/sequence_match.hpp"

namespace phraselette {

using TaggedWord = std::pair<std::string, PosTag>;
using TaggedSentence = std::vector<TaggedWord>;

// "plasticized/VERB onto/ADP" -> {{plasticized, VERB}, {onto, ADP}}. The
// tag is taken after the last '/'. Throws InvalidArgument on a bad tag.
TaggedSentence parse_tagged_line(std::string_view line);

// Reads a corpus of tagged lines; blank lines and '#' comments are skipped.
std::vector<TaggedSentence> read_tagged_corpus(const std::filesystem::path& path);

// word<TAB>TAG lines. Lookups try the exact form, then lower case.
class TagLexicon {
 public:
  static TagLexicon from_file(const std::filesystem::path& path);

  void add(std::string word, PosTag tag) { entries_[std::move(word)] = tag; }
  std::optional<PosTag> lookup(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }
  const std::unordered_map<std::string, PosTag>& entries() const { return entries_; }

 private:
  std::unordered_map<std::string, PosTag> entries_;
};

struct TrainOptions {
  int iterations = 12;
  std::uint64_t seed = 1;
  bool fragments = true;  // also train on every 1-4 word window
};

// Greedy left-to-right averaged perceptron over coarse tags, with a
// rule-based fallback (closed-class words, lexicon, suffixes) when no
// weights are loaded.
class PosTagger {
 public:
  // Rule-based tagger.
  explicit PosTagger(TagLexicon lexicon = {});

  static PosTagger train(const std::vector<TaggedSentence>& corpus, TagLexicon lexicon,
                         const TrainOptions& options = {});

  // Model JSON: {"magic": "phraselette-pos", "version": 1, "weights": {...},
  // "lexicon": {...}}. Throws InvalidArgument or SchemaVersionMismatch.
  static PosTagger from_json(const nlohmann::json& model);
  static PosTagger from_file(const std::filesystem::path& path);
  nlohmann::json to_json() const;
  void save(const std::filesystem::path& path) const;

  // data/pos/model.json if present, else the rule-based tagger over
  // data/pos/lexicon.tsv.
  static PosTagger load_default();

  bool has_model() const { return !weights_.empty(); }

  std::vector<PosTag> tag_words(std::span<const std::string> words) const;

  // One tag per whitespace-delimited word; empty input gives an empty list.
  std::vector<TaggedWord> tag_phrase(std::string_view phrase) const;

  // Token-level agreement with a tagged corpus.
  double accuracy(const std::vector<TaggedSentence>& corpus) const;

 private:
  using Scores = std::array<float, kPosTagCount>;

  PosTag predict(const std::vector<std::string>& features) const;
  PosTag rule_tag(std::string_view word, std::optional<PosTag> prev) const;
  std::vector<std::string> rule_tags(const std::vector<std::string>& raw) const;

  TagLexicon lexicon_;
  std::unordered_map<std::string, Scores> weights_;
};

// Throws InvalidArgument on an empty pattern.
bool tag_sequence_matches(std::span<const PosTag> tags, std::span<const PosTag> pattern,
                          MatchMode mode);

}  // namespace phraselette
