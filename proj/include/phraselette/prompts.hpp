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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace phraselette {

using PromptVars = std::map<std::string, std::string>;

// A versioned prompt pair with {{name}} placeholders.
struct PromptTemplate {
  std::string name;
  int version = 1;
  std::string system;
  std::string user;

  static PromptTemplate from_json(const nlohmann::json& j);

  // Substitutes every placeholder. Throws InvalidArgument when a placeholder
  // has no value.
  std::string render_system(const PromptVars& vars) const;
  std::string render_user(const PromptVars& vars) const;
};

std::string render_template(std::string_view tmpl, const PromptVars& vars);

// Prompt templates keyed by name, one JSON file per template.
class PromptLibrary {
 public:
  static PromptLibrary load_dir(const std::filesystem::path& dir);
  static PromptLibrary load_default();

  void add(PromptTemplate t);
  // Throws InvalidArgument for an unknown name.
  const PromptTemplate& get(const std::string& name) const;
  bool contains(const std::string& name) const { return templates_.contains(name); }

 private:
  std::map<std::string, PromptTemplate> templates_;
};

// Built-in prompt descriptions per well kind, one JSON list per kind
// (<dir>/<kind>.json).
class PresetLibrary {
 public:
  static PresetLibrary load_dir(const std::filesystem::path& dir);
  static PresetLibrary load_default();

  void set(const std::string& kind, std::vector<std::string> presets);
  void add(const std::string& kind, std::string preset);
  // Empty for kinds without presets.
  const std::vector<std::string>& presets(const std::string& kind) const;
  std::vector<std::string> kinds() const;

  // presets(kind)[index mod size]. Throws InvalidArgument when the kind has
  // no presets.
  const std::string& cycle(const std::string& kind, std::size_t index) const;

  nlohmann::json to_json() const;

 private:
  std::map<std::string, std::vector<std::string>> presets_;
};

}  // namespace phraselette
