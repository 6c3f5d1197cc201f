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

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "phraselette/error.hpp"
#include "phraselette/phonology.hpp"
#include "phraselette/pos_tag.hpp"
#include "phraselette/rephrasing.hpp"
#include "phraselette/sequence_match.hpp"

namespace phraselette {

struct IntRange {
  int min = 0;
  int max = 0;

  bool contains(int v) const { return v >= min && v <= max; }
  friend bool operator==(const IntRange&, const IntRange&) = default;
};

// Closed interval of log-probabilities; min may be -infinity.
struct RealRange {
  double min = -std::numeric_limits<double>::infinity();
  double max = 0.0;

  bool contains(double v) const { return v >= min && v <= max; }
  friend bool operator==(const RealRange&, const RealRange&) = default;
};

enum class ConstraintKind { kPosSequence, kSoundRef, kWordCount, kSyllableCount, kLogProbBand };

std::string_view to_string(ConstraintKind kind);
std::optional<ConstraintKind> parse_constraint_kind(std::string_view name);

struct PosSequence {
  std::vector<PosTag> tags;
  MatchMode mode = MatchMode::kExact;
  friend bool operator==(const PosSequence&, const PosSequence&) = default;
};
struct WordCount {
  IntRange range;
  friend bool operator==(const WordCount&, const WordCount&) = default;
};
struct SyllableCount {
  IntRange range;
  friend bool operator==(const SyllableCount&, const SyllableCount&) = default;
};
struct LogProbBand {
  RealRange range;
  friend bool operator==(const LogProbBand&, const LogProbBand&) = default;
};

using ConstraintPayload = std::variant<PosSequence, SoundRef, WordCount, SyllableCount, LogProbBand>;

struct Constraint {
  std::string id;
  std::string source_well_id;
  ConstraintPayload payload;

  ConstraintKind kind() const;
  // Throws InvalidArgument when the payload breaks its invariants (empty
  // tags or phonemes, min > max, negative counts, positive band bounds).
  void validate() const;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

Constraint pos_constraint(std::string id, std::string well_id, std::vector<PosTag> tags, MatchMode mode);
Constraint sound_constraint(std::string id, std::string well_id, SoundRef ref);
Constraint word_count_constraint(std::string id, std::string well_id, int min, int max);
Constraint syllable_constraint(std::string id, std::string well_id, int min, int max);
Constraint band_constraint(std::string id, std::string well_id, double min, double max);

// Which annotation a constraint needs from a rephrasing.
enum class AnnotationKind { kPos, kPhonemes, kLogProb };

std::string_view to_string(AnnotationKind kind);

// Thrown by score_constraint when the rephrasing lacks an annotation; the
// orchestrator annotates and retries.
class MissingAnnotation : public Error {
 public:
  explicit MissingAnnotation(AnnotationKind kind)
      : Error(ErrorCode::kMissingAnnotation,
              "rephrasing lacks the " + std::string(to_string(kind)) + " annotation"),
        kind_(kind) {}

  AnnotationKind kind() const { return kind_; }

 private:
  AnnotationKind kind_;
};

std::optional<AnnotationKind> required_annotation(const Constraint& c);

// max(0, 1 - distance / max(span, 1)), distance being the gap to the nearest
// bound (0 inside the range).
double graded_score(int value, const IntRange& range);

// Score in [0, 1] from the rephrasing's text and annotations only. Word
// tokens carry phonemes as an empty list when they have no letters; a phrase
// with no phonemes at all scores 0 on sound and syllable constraints.
double score_constraint(const Constraint& c, const Rephrasing& r);

struct ScoreSummary {
  std::map<std::string, double> scores;
  double overall = 1.0;
  bool fully_matched = true;
};

// Mean of the individual scores (1.0 for no constraints); fully matched when
// every score is 1.0. Propagates MissingAnnotation.
ScoreSummary score_all(const std::vector<Constraint>& constraints, const Rephrasing& r);

void apply_scores(Rephrasing& r, const ScoreSummary& summary);

// Which generator family advice is meant for.
enum class AdviceTarget { kInstruct, kSearch };

// Constraint-derived guidance for a generator. search_params keys:
// maxTokens, minWords, maxWords, posPattern, mode, bandMin, bandMax and
// scoreOnly (kinds the generator cannot steer by; they are scored later).
struct Advice {
  std::vector<std::string> prompt_clauses;
  nlohmann::json search_params = nlohmann::json::object();
  std::vector<std::string> hard_filters;

  bool empty() const { return prompt_clauses.empty() && search_params.empty() && hard_filters.empty(); }
};

inline constexpr int kTokensPerWord = 2;

Advice advice_for(const Constraint& c, AdviceTarget target, int tokens_per_word = kTokensPerWord);

// Combines advice for several constraints. Numeric search limits intersect
// (tightest bound wins); clauses and filters are concatenated without
// duplicates.
Advice combine_advice(const std::vector<Advice>& parts);

Advice advice_for_all(const std::vector<Constraint>& constraints, AdviceTarget target,
                      int tokens_per_word = kTokensPerWord);

// "Constraints:\n- clause\n- clause\n" or "" when there are none.
std::string render_clauses(const std::vector<std::string>& clauses);

}  // namespace phraselette
