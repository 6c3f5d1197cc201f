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

#include "phraselette/wells.hpp"

#include "phraselette/error.hpp"
#include "phraselette/text.hpp"

namespace phraselette {

std::string_view to_string(InsightKind kind) {
  switch (kind) {
    case InsightKind::kTextBullets: return "textBullets";
    case InsightKind::kHistogram: return "histogram";
    case InsightKind::kDefinition: return "definition";
    case InsightKind::kPronunciationAnnotation: return "pronunciationAnnotation";
  }
  return "textBullets";
}

std::optional<InsightKind> parse_insight_kind(std::string_view name) {
  for (InsightKind k : {InsightKind::kTextBullets, InsightKind::kHistogram, InsightKind::kDefinition,
                        InsightKind::kPronunciationAnnotation}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

std::string_view to_string(ViewKind kind) {
  switch (kind) {
    case ViewKind::kPos: return "pos";
    case ViewKind::kLogProb: return "logProb";
    case ViewKind::kPhonemes: return "phonemes";
  }
  return "pos";
}

std::optional<ViewKind> parse_view_kind(std::string_view name) {
  for (ViewKind k : {ViewKind::kPos, ViewKind::kLogProb, ViewKind::kPhonemes}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

std::vector<Constraint> Well::constraints(const InletContext&) const { return {}; }

void WellRegistry::add(WellDescriptor descriptor) {
  if (descriptor.kind.empty() || !descriptor.create) {
    throw Error(ErrorCode::kInvalidArgument, "well descriptors need a kind and a factory");
  }
  if (descriptors_.contains(descriptor.kind)) {
    throw Error(ErrorCode::kInvalidArgument, "well kind " + descriptor.kind + " is already registered");
  }
  const std::string kind = descriptor.kind;
  descriptors_.emplace(kind, std::move(descriptor));
}

const WellDescriptor* WellRegistry::find(const std::string& kind) const {
  auto it = descriptors_.find(kind);
  return it == descriptors_.end() ? nullptr : &it->second;
}

const WellDescriptor& WellRegistry::get(const std::string& kind) const {
  const WellDescriptor* d = find(kind);
  if (d == nullptr) throw Error(ErrorCode::kUnknownWell, "unknown well kind " + kind);
  return *d;
}

std::vector<std::string> WellRegistry::kinds() const {
  std::vector<std::string> out;
  for (const auto& [k, d] : descriptors_) out.push_back(k);
  return out;
}

void WellRegistry::validate(const WellConfig& config) const {
  const WellDescriptor& d = get(config.kind);
  if (config.well_id.empty()) throw Error(ErrorCode::kInvalidArgument, "well id is empty");
  if (!config.parameters.is_object()) {
    throw Error(ErrorCode::kInvalidArgument, "well parameters must be a JSON object");
  }
  if (d.requires_description &&
      (!config.prompt_description || text::trim(*config.prompt_description).empty())) {
    throw Error(ErrorCode::kInvalidArgument, config.kind + " wells need a prompt description");
  }
  if (d.validate) d.validate(config);
}

std::unique_ptr<Well> WellRegistry::create(const WellConfig& config, const WellServices& services) const {
  validate(config);
  return get(config.kind).create(config, services);
}

WellRegistry WellRegistry::with_builtin_wells() {
  WellRegistry r;
  register_builtin_wells(r);
  return r;
}

std::string cycle_preset(const PresetLibrary& presets, const std::string& kind, std::size_t index) {
  return presets.cycle(kind, index);
}

namespace params {

namespace {

[[noreturn]] void bad(const std::string& key, std::string_view expected) {
  throw Error(ErrorCode::kInvalidArgument, "parameter \"" + key + "\" must be " + std::string(expected));
}

const nlohmann::json* lookup(const nlohmann::json& p, const std::string& key) {
  if (!p.is_object()) return nullptr;
  auto it = p.find(key);
  if (it == p.end() || it->is_null()) return nullptr;
  return &*it;
}

}  // namespace

std::optional<IntRange> int_range(const nlohmann::json& p, const std::string& key) {
  const nlohmann::json* v = lookup(p, key);
  if (v == nullptr) return std::nullopt;
  IntRange r;
  if (v->is_array() && v->size() == 2 && (*v)[0].is_number_integer() && (*v)[1].is_number_integer()) {
    r = {(*v)[0].get<int>(), (*v)[1].get<int>()};
  } else if (v->is_object() && v->contains("min") && v->contains("max") &&
             (*v)["min"].is_number_integer() && (*v)["max"].is_number_integer()) {
    r = {(*v)["min"].get<int>(), (*v)["max"].get<int>()};
  } else {
    bad(key, "[min, max] or {\"min\", \"max\"}");
  }
  if (r.min < 0 || r.min > r.max) bad(key, "a range with 0 <= min <= max");
  return r;
}

std::optional<int> integer(const nlohmann::json& p, const std::string& key) {
  const nlohmann::json* v = lookup(p, key);
  if (v == nullptr) return std::nullopt;
  if (!v->is_number_integer()) bad(key, "an integer");
  return v->get<int>();
}

std::optional<double> real(const nlohmann::json& p, const std::string& key) {
  const nlohmann::json* v = lookup(p, key);
  if (v == nullptr) return std::nullopt;
  if (!v->is_number()) bad(key, "a number");
  return v->get<double>();
}

std::optional<bool> boolean(const nlohmann::json& p, const std::string& key) {
  const nlohmann::json* v = lookup(p, key);
  if (v == nullptr) return std::nullopt;
  if (!v->is_boolean()) bad(key, "true or false");
  return v->get<bool>();
}

std::optional<std::string> string(const nlohmann::json& p, const std::string& key) {
  const nlohmann::json* v = lookup(p, key);
  if (v == nullptr) return std::nullopt;
  if (v->is_array()) {
    std::vector<std::string> parts;
    for (const auto& x : *v) {
      if (!x.is_string()) bad(key, "a string or a list of strings");
      parts.push_back(x.get<std::string>());
    }
    return text::join(parts, " ");
  }
  if (!v->is_string()) bad(key, "a string");
  return v->get<std::string>();
}

}  // namespace params

}  // namespace phraselette
