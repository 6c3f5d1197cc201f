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

#include "phraselette/constraints.hpp"

#include <algorithm>
#include <cmath>

#include "phraselette/text.hpp"

namespace phraselette {

std::string_view to_string(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::kPosSequence: return "posSequence";
    case ConstraintKind::kSoundRef: return "soundRef";
    case ConstraintKind::kWordCount: return "wordCount";
    case ConstraintKind::kSyllableCount: return "syllableCount";
    case ConstraintKind::kLogProbBand: return "logProbBand";
  }
  return "wordCount";
}

std::optional<ConstraintKind> parse_constraint_kind(std::string_view name) {
  for (ConstraintKind k : {ConstraintKind::kPosSequence, ConstraintKind::kSoundRef,
                           ConstraintKind::kWordCount, ConstraintKind::kSyllableCount,
                           ConstraintKind::kLogProbBand}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

std::string_view to_string(AnnotationKind kind) {
  switch (kind) {
    case AnnotationKind::kPos: return "pos";
    case AnnotationKind::kPhonemes: return "phonemes";
    case AnnotationKind::kLogProb: return "logProb";
  }
  return "pos";
}

ConstraintKind Constraint::kind() const { return static_cast<ConstraintKind>(payload.index()); }

namespace {

void check_int_range(const IntRange& r, std::string_view what) {
  if (r.min < 0 || r.min > r.max) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " range [" + std::to_string(r.min) +
                                                 ", " + std::to_string(r.max) + "] is invalid");
  }
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

void Constraint::validate() const {
  if (id.empty()) throw Error(ErrorCode::kInvalidArgument, "constraint id is empty");
  std::visit(Overloaded{
                 [](const PosSequence& p) {
                   if (p.tags.empty()) throw Error(ErrorCode::kInvalidArgument, "POS pattern is empty");
                 },
                 [](const SoundRef& s) {
                   if (s.phonemes.empty()) throw Error(ErrorCode::kInvalidArgument, "sound reference is empty");
                 },
                 [](const WordCount& w) { check_int_range(w.range, "word count"); },
                 [](const SyllableCount& s) { check_int_range(s.range, "syllable count"); },
                 [](const LogProbBand& b) {
                   if (std::isnan(b.range.min) || std::isnan(b.range.max) || b.range.min > b.range.max ||
                       b.range.max > 0.0 || b.range.min == std::numeric_limits<double>::infinity()) {
                     throw Error(ErrorCode::kInvalidArgument, "log-probability band is invalid");
                   }
                 },
             },
             payload);
}

Constraint pos_constraint(std::string id, std::string well_id, std::vector<PosTag> tags, MatchMode mode) {
  Constraint c{std::move(id), std::move(well_id), PosSequence{std::move(tags), mode}};
  c.validate();
  return c;
}

Constraint sound_constraint(std::string id, std::string well_id, SoundRef ref) {
  Constraint c{std::move(id), std::move(well_id), std::move(ref)};
  c.validate();
  return c;
}

Constraint word_count_constraint(std::string id, std::string well_id, int min, int max) {
  Constraint c{std::move(id), std::move(well_id), WordCount{{min, max}}};
  c.validate();
  return c;
}

Constraint syllable_constraint(std::string id, std::string well_id, int min, int max) {
  Constraint c{std::move(id), std::move(well_id), SyllableCount{{min, max}}};
  c.validate();
  return c;
}

Constraint band_constraint(std::string id, std::string well_id, double min, double max) {
  Constraint c{std::move(id), std::move(well_id), LogProbBand{{min, max}}};
  c.validate();
  return c;
}

std::optional<AnnotationKind> required_annotation(const Constraint& c) {
  switch (c.kind()) {
    case ConstraintKind::kPosSequence: return AnnotationKind::kPos;
    case ConstraintKind::kSoundRef:
    case ConstraintKind::kSyllableCount: return AnnotationKind::kPhonemes;
    case ConstraintKind::kLogProbBand: return AnnotationKind::kLogProb;
    case ConstraintKind::kWordCount: return std::nullopt;
  }
  return std::nullopt;
}

double graded_score(int value, const IntRange& range) {
  if (range.contains(value)) return 1.0;
  const int distance = value < range.min ? range.min - value : value - range.max;
  const int width = std::max(range.max - range.min, 1);
  return std::max(0.0, 1.0 - static_cast<double>(distance) / static_cast<double>(width));
}

namespace {

std::vector<PosTag> word_tags(const Rephrasing& r) {
  std::vector<PosTag> tags;
  for (const TokenView& t : r.tokens) {
    if (!t.is_word()) continue;
    if (!t.pos) throw MissingAnnotation(AnnotationKind::kPos);
    tags.push_back(*t.pos);
  }
  return tags;
}

std::vector<Phoneme> word_phonemes(const Rephrasing& r) {
  std::vector<Phoneme> out;
  for (const TokenView& t : r.tokens) {
    if (!t.is_word()) continue;
    if (!t.phonemes) throw MissingAnnotation(AnnotationKind::kPhonemes);
    out.insert(out.end(), t.phonemes->begin(), t.phonemes->end());
  }
  return out;
}

}  // namespace

double score_constraint(const Constraint& c, const Rephrasing& r) {
  return std::visit(
      Overloaded{
          [&](const PosSequence& p) {
            return sequence_matches<PosTag>(word_tags(r), p.tags, p.mode) ? 1.0 : 0.0;
          },
          [&](const SoundRef& s) {
            const auto ph = word_phonemes(r);
            return !ph.empty() && phonemes_match(ph, s) ? 1.0 : 0.0;
          },
          [&](const WordCount& w) {
            return graded_score(static_cast<int>(text::word_count(r.text)), w.range);
          },
          [&](const SyllableCount& s) {
            const auto ph = word_phonemes(r);
            return ph.empty() ? 0.0 : graded_score(syllable_count(ph), s.range);
          },
          [&](const LogProbBand& b) {
            if (!r.total_log_prob) throw MissingAnnotation(AnnotationKind::kLogProb);
            return b.range.contains(*r.total_log_prob) ? 1.0 : 0.0;
          },
      },
      c.payload);
}

ScoreSummary score_all(const std::vector<Constraint>& constraints, const Rephrasing& r) {
  ScoreSummary s;
  for (const Constraint& c : constraints) s.scores[c.id] = score_constraint(c, r);
  s.overall = mean_score(s.scores);
  s.fully_matched = std::ranges::all_of(s.scores, [](const auto& kv) { return kv.second >= 1.0; });
  return s;
}

void apply_scores(Rephrasing& r, const ScoreSummary& summary) {
  r.constraint_scores = summary.scores;
  r.overall_score = summary.overall;
  r.fully_matched = summary.fully_matched;
}

namespace {

std::string_view tag_phrase_name(PosTag tag) {
  switch (tag) {
    case PosTag::NOUN: return "noun";
    case PosTag::VERB: return "verb";
    case PosTag::ADJ: return "adjective";
    case PosTag::ADV: return "adverb";
    case PosTag::ADP: return "preposition";
    case PosTag::PRON: return "pronoun";
    case PosTag::DET: return "determiner";
    case PosTag::AUX: return "auxiliary verb";
    case PosTag::NUM: return "number";
    case PosTag::CONJ: return "conjunction";
    case PosTag::SCONJ: return "subordinating conjunction";
    case PosTag::PART: return "particle";
    case PosTag::PROPN: return "proper noun";
    case PosTag::INTJ: return "interjection";
    case PosTag::PUNCT: return "punctuation mark";
    case PosTag::SYM: return "symbol";
    case PosTag::X: return "other word";
  }
  return "word";
}

std::string describe_tags(const std::vector<PosTag>& tags) {
  std::vector<std::string> names;
  for (PosTag t : tags) names.emplace_back(tag_phrase_name(t));
  return text::join(names, ", ") + " (" + render_pos_tags(tags) + ")";
}

std::string count_clause(const IntRange& r, std::string_view unit) {
  if (r.min == r.max) {
    return "exactly " + std::to_string(r.min) + " " + std::string(unit) + (r.min == 1 ? "" : "s");
  }
  return "between " + std::to_string(r.min) + " and " + std::to_string(r.max) + " " + std::string(unit) + "s";
}

std::string instruct_clause(const Constraint& c) {
  return std::visit(
      Overloaded{
          [](const PosSequence& p) -> std::string {
            const std::string tags = describe_tags(p.tags);
            switch (p.mode) {
              case MatchMode::kExact: return "use exactly this part-of-speech sequence: " + tags;
              case MatchMode::kStartsWith: return "begin with this part-of-speech sequence: " + tags;
              case MatchMode::kEndsWith: return "end with this part-of-speech sequence: " + tags;
              case MatchMode::kContains: return "contain this part-of-speech sequence: " + tags;
              case MatchMode::kInOrder: return "include these parts of speech in this order: " + tags;
            }
            return "";
          },
          [](const SoundRef& s) -> std::string {
            const std::string sounds = render_phonemes(s.phonemes);
            switch (s.mode) {
              case SoundMode::kStartsWith: return "start with the sounds " + sounds;
              case SoundMode::kEndsWith: return "end with the sounds " + sounds;
              case SoundMode::kContains: return "contain the sounds " + sounds;
              case SoundMode::kRhymesWith:
                return "rhyme with the sounds " + render_phonemes(rhyme_suffix(s.phonemes));
            }
            return "";
          },
          [](const WordCount& w) { return "aim to produce " + count_clause(w.range, "word"); },
          [](const SyllableCount& s) { return "aim for " + count_clause(s.range, "syllable"); },
          [](const LogProbBand&) { return std::string(); },
      },
      c.payload);
}

void add_unique(std::vector<std::string>& out, const std::string& s) {
  if (std::ranges::find(out, s) == out.end()) out.push_back(s);
}

}  // namespace

Advice advice_for(const Constraint& c, AdviceTarget target, int tokens_per_word) {
  Advice a;
  if (c.kind() == ConstraintKind::kLogProbBand) {
    a.hard_filters.push_back("logProbBand");
    if (target == AdviceTarget::kSearch) {
      const auto& band = std::get<LogProbBand>(c.payload).range;
      a.search_params["bandMin"] = std::isinf(band.min) ? nlohmann::json(nullptr) : nlohmann::json(band.min);
      a.search_params["bandMax"] = band.max;
    }
    return a;
  }
  if (target == AdviceTarget::kInstruct) {
    a.prompt_clauses.push_back(instruct_clause(c));
    return a;
  }
  std::visit(Overloaded{
                 [&](const PosSequence& p) {
                   a.search_params["posPattern"] = render_pos_tags(p.tags);
                   a.search_params["mode"] = std::string(to_string(p.mode));
                 },
                 [&](const WordCount& w) {
                   a.search_params["maxTokens"] = std::max(1, w.range.max * tokens_per_word);
                   a.search_params["minWords"] = w.range.min;
                   a.search_params["maxWords"] = w.range.max;
                 },
                 [&](const auto&) {
                   a.search_params["scoreOnly"] = nlohmann::json::array({std::string(to_string(c.kind()))});
                 },
             },
             c.payload);
  return a;
}

Advice combine_advice(const std::vector<Advice>& parts) {
  Advice out;
  auto& sp = out.search_params;
  auto tighten = [&](const char* key, const nlohmann::json& v, bool take_min) {
    if (v.is_null()) {
      if (!sp.contains(key)) sp[key] = nullptr;
      return;
    }
    if (!sp.contains(key) || sp[key].is_null()) {
      sp[key] = v;
    } else if (take_min) {
      sp[key] = std::min(sp[key].get<double>(), v.get<double>());
    } else {
      sp[key] = std::max(sp[key].get<double>(), v.get<double>());
    }
  };
  for (const Advice& a : parts) {
    for (const std::string& c : a.prompt_clauses) add_unique(out.prompt_clauses, c);
    for (const std::string& f : a.hard_filters) add_unique(out.hard_filters, f);
    for (const auto& [key, v] : a.search_params.items()) {
      if (key == "maxTokens" || key == "maxWords") {
        if (!sp.contains(key)) sp[key] = v;
        else sp[key] = std::min(sp[key].get<int>(), v.get<int>());
      } else if (key == "minWords") {
        if (!sp.contains(key)) sp[key] = v;
        else sp[key] = std::max(sp[key].get<int>(), v.get<int>());
      } else if (key == "bandMin") {
        tighten("bandMin", v, false);
      } else if (key == "bandMax") {
        tighten("bandMax", v, true);
      } else if (key == "scoreOnly") {
        if (!sp.contains(key)) sp[key] = nlohmann::json::array();
        for (const auto& k : v) {
          if (std::ranges::find(sp[key], k) == sp[key].end()) sp[key].push_back(k);
        }
      } else {
        sp[key] = v;
      }
    }
  }
  return out;
}

Advice advice_for_all(const std::vector<Constraint>& constraints, AdviceTarget target,
                      int tokens_per_word) {
  std::vector<Advice> parts;
  for (const Constraint& c : constraints) parts.push_back(advice_for(c, target, tokens_per_word));
  return combine_advice(parts);
}

std::string render_clauses(const std::vector<std::string>& clauses) {
  if (clauses.empty()) return "";
  std::string out = "Constraints:\n";
  for (const std::string& c : clauses) out += "- " + c + "\n";
  return out;
}

}  // namespace phraselette
