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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phraselette/phoneme.hpp"
#include "phraselette/pos_tag.hpp"

namespace phraselette {

// One token of a rephrasing as shown in the hover view: a word or a run of
// whitespace, plus whatever annotations the active views attached.
struct TokenView {
  std::string surface;
  std::optional<PosTag> pos;
  std::optional<double> log_prob;
  std::optional<std::vector<Phoneme>> phonemes;

  bool is_word() const;

  friend bool operator==(const TokenView&, const TokenView&) = default;
};

// Splits text into alternating word / whitespace view tokens.
std::vector<TokenView> view_tokens(std::string_view text);

struct Rephrasing {
  std::string text;
  std::vector<TokenView> tokens;
  std::string well_id;
  // Every well that produced this text; filled by dedupe, starts as {well_id}.
  std::vector<std::string> provenance;
  double internal_score = 0.0;
  std::map<std::string, double> constraint_scores;
  double overall_score = 1.0;
  bool fully_matched = true;
  std::optional<double> total_log_prob;
  std::int64_t generation = 0;

  // Stable identifier derived from the text; unique within a deduped pool.
  std::string id() const;

  friend bool operator==(const Rephrasing&, const Rephrasing&) = default;
};

// Builds a rephrasing with view tokens and provenance filled in. Throws
// InvalidArgument on empty (after trimming) text.
Rephrasing make_rephrasing(std::string_view text, std::string well_id, double internal_score,
                           std::int64_t generation);

// Mean of constraint_scores, 1.0 when empty.
double mean_score(const std::map<std::string, double>& scores);

}  // namespace phraselette
