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

#include "phraselette/serialize.hpp"

#include <cmath>
#include <limits>

#include "phraselette/error.hpp"

namespace phraselette::wire {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::kInvalidArgument, what); }

std::int64_t require_int(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number_integer()) bad(std::string("\"") + key + "\" must be an integer");
  return v.get<std::int64_t>();
}

std::size_t require_offset(const json& j, const char* key) {
  const std::int64_t v = require_int(j, key);
  if (v < 0) bad(std::string("\"") + key + "\" must not be negative");
  return static_cast<std::size_t>(v);
}

double require_number(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number()) bad(std::string("\"") + key + "\" must be a number");
  return v.get<double>();
}

std::vector<std::string> string_list(const json& v, const char* key) {
  if (!v.is_array()) bad(std::string("\"") + key + "\" must be a list of strings");
  std::vector<std::string> out;
  for (const json& x : v) {
    if (!x.is_string()) bad(std::string("\"") + key + "\" must be a list of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

json encode_phonemes(const std::vector<Phoneme>& phonemes) {
  json out = json::array();
  for (const Phoneme& p : phonemes) out.push_back(p.to_string(true));
  return out;
}

std::vector<Phoneme> decode_phonemes(const json& v, const char* key) {
  std::vector<Phoneme> out;
  for (const std::string& s : string_list(v, key)) {
    auto p = parse_phoneme(s);
    if (!p) bad("not an ARPAbet phoneme: " + s);
    out.push_back(*p);
  }
  return out;
}

IntRange decode_int_range(const json& payload) {
  return {static_cast<int>(require_int(payload, "min")), static_cast<int>(require_int(payload, "max"))};
}

}  // namespace

const json& require(const json& j, const char* key) {
  if (!j.is_object()) bad("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field \"") + key + "\"");
  return *it;
}

std::string require_string(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_string()) bad(std::string("\"") + key + "\" must be a string");
  return v.get<std::string>();
}

json encode(const Inlet& inlet) {
  return {{"id", inlet.id},
          {"start", inlet.range.start},
          {"end", inlet.range.end},
          {"activeWellIds", inlet.active_well_ids},
          {"generation", inlet.generation}};
}

Inlet decode_inlet(const json& j) {
  Inlet inlet;
  inlet.id = require_string(j, "id");
  inlet.range = {require_offset(j, "start"), require_offset(j, "end")};
  if (j.contains("activeWellIds")) {
    for (std::string& id : string_list(j["activeWellIds"], "activeWellIds")) {
      inlet.active_well_ids.insert(std::move(id));
    }
  }
  inlet.generation = j.contains("generation") ? require_int(j, "generation") : 0;
  return inlet;
}

json encode(const Document& doc) {
  json inlets = json::array();
  for (const Inlet& i : doc.inlets()) inlets.push_back(encode(i));
  return {{"id", doc.id()},
          {"text", doc.text()},
          {"inlets", inlets},
          {"revision", doc.revision()},
          {"nextInletSeq", doc.next_inlet_seq()}};
}

Document decode_document(const json& j) {
  std::vector<Inlet> inlets;
  if (j.contains("inlets")) {
    const json& list = j["inlets"];
    if (!list.is_array()) bad("\"inlets\" must be a list");
    for (const json& x : list) inlets.push_back(decode_inlet(x));
  }
  const std::string id = j.contains("id") ? require_string(j, "id") : std::string();
  return Document::restore(id, require_string(j, "text"), std::move(inlets),
                           j.contains("revision") ? require_int(j, "revision") : 0,
                           j.contains("nextInletSeq") ? require_int(j, "nextInletSeq")
                                                      : static_cast<std::int64_t>(inlets.size()) + 1);
}

json encode(const TokenView& token) {
  json j = {{"surface", token.surface}};
  if (token.pos) j["pos"] = to_string(*token.pos);
  if (token.log_prob) j["logProb"] = *token.log_prob;
  if (token.phonemes) j["phonemes"] = encode_phonemes(*token.phonemes);
  return j;
}

TokenView decode_token_view(const json& j) {
  TokenView t;
  t.surface = require_string(j, "surface");
  if (j.contains("pos")) {
    auto tag = parse_pos_tag(require_string(j, "pos"));
    if (!tag) bad("unknown part-of-speech tag " + j["pos"].get<std::string>());
    t.pos = *tag;
  }
  if (j.contains("logProb")) t.log_prob = require_number(j, "logProb");
  if (j.contains("phonemes")) t.phonemes = decode_phonemes(j["phonemes"], "phonemes");
  return t;
}

json encode(const Rephrasing& r) {
  json tokens = json::array();
  for (const TokenView& t : r.tokens) tokens.push_back(encode(t));
  json j = {{"id", r.id()},
            {"text", r.text},
            {"wellId", r.well_id},
            {"provenance", r.provenance},
            {"internalScore", r.internal_score},
            {"constraintScores", r.constraint_scores},
            {"overallScore", r.overall_score},
            {"fullyMatched", r.fully_matched},
            {"generation", r.generation},
            {"tokens", tokens}};
  if (r.total_log_prob) j["totalLogProb"] = *r.total_log_prob;
  return j;
}

Rephrasing decode_rephrasing(const json& j) {
  Rephrasing r;
  r.text = require_string(j, "text");
  r.well_id = j.contains("wellId") ? require_string(j, "wellId") : std::string();
  if (j.contains("provenance")) r.provenance = string_list(j["provenance"], "provenance");
  if (j.contains("internalScore")) r.internal_score = require_number(j, "internalScore");
  if (j.contains("constraintScores")) {
    const json& cs = j["constraintScores"];
    if (!cs.is_object()) bad("\"constraintScores\" must be an object");
    for (const auto& [k, v] : cs.items()) {
      if (!v.is_number()) bad("constraint scores must be numbers");
      r.constraint_scores[k] = v.get<double>();
    }
  }
  if (j.contains("overallScore")) r.overall_score = require_number(j, "overallScore");
  if (j.contains("fullyMatched")) {
    if (!j["fullyMatched"].is_boolean()) bad("\"fullyMatched\" must be true or false");
    r.fully_matched = j["fullyMatched"].get<bool>();
  }
  if (j.contains("totalLogProb")) r.total_log_prob = require_number(j, "totalLogProb");
  if (j.contains("generation")) r.generation = require_int(j, "generation");
  if (j.contains("tokens")) {
    if (!j["tokens"].is_array()) bad("\"tokens\" must be a list");
    for (const json& t : j["tokens"]) r.tokens.push_back(decode_token_view(t));
  } else {
    r.tokens = view_tokens(r.text);
  }
  return r;
}

json encode(const Constraint& c) {
  json j = {{"id", c.id}, {"kind", to_string(c.kind())}, {"sourceWellId", c.source_well_id}};
  json payload;
  if (const auto* p = std::get_if<PosSequence>(&c.payload)) {
    json tags = json::array();
    for (PosTag t : p->tags) tags.push_back(to_string(t));
    payload = {{"tags", tags}};
    j["mode"] = to_string(p->mode);
  } else if (const auto* s = std::get_if<SoundRef>(&c.payload)) {
    payload = {{"phonemes", encode_phonemes(s->phonemes)}, {"mode", to_string(s->mode)}};
  } else if (const auto* w = std::get_if<WordCount>(&c.payload)) {
    payload = {{"min", w->range.min}, {"max", w->range.max}};
  } else if (const auto* y = std::get_if<SyllableCount>(&c.payload)) {
    payload = {{"min", y->range.min}, {"max", y->range.max}};
  } else if (const auto* b = std::get_if<LogProbBand>(&c.payload)) {
    payload = {{"min", std::isinf(b->range.min) ? json(nullptr) : json(b->range.min)},
               {"max", b->range.max}};
  }
  j["payload"] = payload;
  return j;
}

Constraint decode_constraint(const json& j) {
  Constraint c;
  c.id = require_string(j, "id");
  c.source_well_id = j.contains("sourceWellId") ? require_string(j, "sourceWellId") : std::string();
  const std::string kind_name = require_string(j, "kind");
  const auto kind = parse_constraint_kind(kind_name);
  if (!kind) bad("unknown constraint kind " + kind_name);
  const json& payload = require(j, "payload");
  if (!payload.is_object()) bad("\"payload\" must be an object");
  switch (*kind) {
    case ConstraintKind::kPosSequence: {
      PosSequence p;
      for (const std::string& name : string_list(require(payload, "tags"), "tags")) {
        auto tag = parse_pos_tag(name);
        if (!tag) bad("unknown part-of-speech tag " + name);
        p.tags.push_back(*tag);
      }
      const std::string mode = j.contains("mode") ? require_string(j, "mode")
                               : payload.contains("mode") ? require_string(payload, "mode")
                                                          : std::string("exact");
      auto m = parse_match_mode(mode);
      if (!m) bad("unknown match mode " + mode);
      p.mode = *m;
      c.payload = std::move(p);
      break;
    }
    case ConstraintKind::kSoundRef: {
      SoundRef s;
      s.phonemes = decode_phonemes(require(payload, "phonemes"), "phonemes");
      const std::string mode = payload.contains("mode") ? require_string(payload, "mode")
                               : j.contains("mode")     ? require_string(j, "mode")
                                                        : std::string("startsWith");
      auto m = parse_sound_mode(mode);
      if (!m) bad("unknown sound mode " + mode);
      s.mode = *m;
      c.payload = std::move(s);
      break;
    }
    case ConstraintKind::kWordCount:
      c.payload = WordCount{decode_int_range(payload)};
      break;
    case ConstraintKind::kSyllableCount:
      c.payload = SyllableCount{decode_int_range(payload)};
      break;
    case ConstraintKind::kLogProbBand: {
      RealRange r;
      const json& lo = require(payload, "min");
      r.min = lo.is_null() ? -std::numeric_limits<double>::infinity() : require_number(payload, "min");
      r.max = require_number(payload, "max");
      c.payload = LogProbBand{r};
      break;
    }
  }
  c.validate();
  return c;
}

json encode(const WellConfig& config) {
  json j = {{"wellId", config.well_id}, {"kind", config.kind}, {"parameters", config.parameters}};
  if (config.prompt_description) j["promptDescription"] = *config.prompt_description;
  return j;
}

WellConfig decode_well_config(const json& j) {
  WellConfig c;
  c.well_id = require_string(j, "wellId");
  c.kind = require_string(j, "kind");
  if (j.contains("promptDescription") && !j["promptDescription"].is_null()) {
    c.prompt_description = require_string(j, "promptDescription");
  }
  if (j.contains("parameters")) {
    if (!j["parameters"].is_object()) bad("\"parameters\" must be an object");
    c.parameters = j["parameters"];
  }
  return c;
}

json encode(const Insight& insight) {
  return {{"kind", to_string(insight.kind)}, {"wellId", insight.well_id}, {"body", insight.body}};
}

Insight decode_insight(const json& j) {
  Insight i;
  const std::string kind = require_string(j, "kind");
  auto k = parse_insight_kind(kind);
  if (!k) bad("unknown insight kind " + kind);
  i.kind = *k;
  i.well_id = require_string(j, "wellId");
  if (j.contains("body")) i.body = j["body"];
  return i;
}

json encode(const JobSnapshot& s) {
  json wells = json::object();
  json failures = json::object();
  for (const auto& [id, status] : s.wells) {
    wells[id] = to_string(status.state);
    if (!status.reason.empty()) failures[id] = status.reason;
  }
  auto pool = [](const std::vector<Rephrasing>& list) {
    json out = json::array();
    for (const Rephrasing& r : list) {
      json e = encode(r);
      e["color"] = well_color(r.well_id);
      out.push_back(std::move(e));
    }
    return out;
  };
  json insights = json::array();
  for (const Insight& i : s.insights) insights.push_back(encode(i));
  json constraints = json::array();
  for (const Constraint& c : s.constraints) constraints.push_back(encode(c));
  return {{"jobId", s.job_id},
          {"inletId", s.inlet_id},
          {"generation", s.generation},
          {"complete", s.complete},
          {"wells", wells},
          {"failures", failures},
          {"rephrasings", pool(s.rephrasings)},
          {"newRephrasings", pool(s.new_rephrasings)},
          {"nextCursor", s.next_cursor},
          {"insights", insights},
          {"constraints", constraints}};
}

}  // namespace phraselette::wire
