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
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "phraselette/constraints.hpp"
#include "phraselette/document.hpp"
#include "phraselette/lm_backend.hpp"
#include "phraselette/phonology.hpp"
#include "phraselette/pos_tagger.hpp"
#include "phraselette/prompts.hpp"
#include "phraselette/rephrasing.hpp"
#include "phraselette/well_config.hpp"

namespace phraselette {

enum class InsightKind { kTextBullets, kHistogram, kDefinition, kPronunciationAnnotation };
enum class ViewKind { kPos, kLogProb, kPhonemes };

std::string_view to_string(InsightKind kind);
std::optional<InsightKind> parse_insight_kind(std::string_view name);
std::string_view to_string(ViewKind kind);
std::optional<ViewKind> parse_view_kind(std::string_view name);

struct Insight {
  InsightKind kind = InsightKind::kTextBullets;
  std::string well_id;
  nlohmann::json body = nlohmann::json::object();

  friend bool operator==(const Insight&, const Insight&) = default;
};

struct WellOutput {
  std::vector<Rephrasing> rephrasings;
  std::vector<Insight> insights;
  std::optional<ViewKind> view;
  std::vector<Constraint> emitted_constraints;

  bool empty() const {
    return rephrasings.empty() && insights.empty() && !view && emitted_constraints.empty();
  }
};

// What a well sees of the inlet it runs on.
struct InletContext {
  std::string document_id;
  std::string inlet_id;
  std::int64_t generation = 0;
  ContextSlice slice;
  std::optional<std::uint64_t> seed;
};

// Shared engine resources handed to well factories. Any member may be null
// when the corresponding capability is not configured; wells that need it
// throw BackendUnavailable at run time.
struct WellServices {
  std::shared_ptr<const LogitBackend> logit;
  std::shared_ptr<const InstructBackend> instruct;
  std::shared_ptr<const Phonology> phonology;
  std::shared_ptr<const PosTagger> tagger;
  std::shared_ptr<const PromptLibrary> prompts;
  std::shared_ptr<const PresetLibrary> presets;
};

// A configured well instance. Stateless between runs.
class Well {
 public:
  explicit Well(WellConfig config) : config_(std::move(config)) {}
  virtual ~Well() = default;

  const WellConfig& config() const { return config_; }
  const std::string& id() const { return config_.well_id; }

  // Constraints this well contributes to the pool, known before any well
  // generates.
  virtual std::vector<Constraint> constraints(const InletContext& ctx) const;

  virtual WellOutput run(const InletContext& ctx, const Advice& advice) const = 0;

 private:
  WellConfig config_;
};

struct WellCapabilities {
  bool generates = false;
  bool constrains = false;
  bool insights = false;
  bool views = false;
};

// Extension point: everything the engine needs to know about a well kind.
struct WellDescriptor {
  std::string kind;
  WellCapabilities capabilities;
  std::optional<ViewKind> view;
  AdviceTarget advice_target = AdviceTarget::kInstruct;
  bool requires_description = false;
  bool always_active = false;
  // Accepted parameter keys with a short description each.
  nlohmann::json parameter_docs = nlohmann::json::object();
  // Extra validation beyond the description check; throws InvalidArgument.
  std::function<void(const WellConfig&)> validate;
  std::function<std::unique_ptr<Well>(const WellConfig&, const WellServices&)> create;
};

class WellRegistry {
 public:
  // Throws InvalidArgument for a duplicate or incomplete descriptor.
  void add(WellDescriptor descriptor);
  const WellDescriptor* find(const std::string& kind) const;
  // Throws UnknownWell.
  const WellDescriptor& get(const std::string& kind) const;
  std::vector<std::string> kinds() const;

  // Checks the description requirement and runs the descriptor validator.
  void validate(const WellConfig& config) const;
  std::unique_ptr<Well> create(const WellConfig& config, const WellServices& services) const;

  // Registry with words, thesaurus, reader, context, sound and dictionary.
  static WellRegistry with_builtin_wells();

 private:
  std::map<std::string, WellDescriptor> descriptors_;
};

void register_builtin_wells(WellRegistry& registry);

// Next built-in description for a kind, wrapping around.
std::string cycle_preset(const PresetLibrary& presets, const std::string& kind, std::size_t index);

// Parameter helpers shared by the built-in wells.
namespace params {
std::optional<IntRange> int_range(const nlohmann::json& parameters, const std::string& key);
std::optional<int> integer(const nlohmann::json& parameters, const std::string& key);
std::optional<double> real(const nlohmann::json& parameters, const std::string& key);
std::optional<bool> boolean(const nlohmann::json& parameters, const std::string& key);
std::optional<std::string> string(const nlohmann::json& parameters, const std::string& key);
}  // namespace params

}  // namespace phraselette
