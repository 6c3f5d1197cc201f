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

#include "phraselette/prompts.hpp"

#include <fstream>

#include "phraselette/error.hpp"
#include "phraselette/paths.hpp"

namespace phraselette {

namespace {

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::kInvalidArgument, path.string() + " is not valid JSON");
  return j;
}

std::vector<std::filesystem::path> json_files(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kIoError, dir.string() + " is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::ranges::sort(files);
  return files;
}

}  // namespace

std::string render_template(std::string_view tmpl, const PromptVars& vars) {
  std::string out;
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    const auto open = tmpl.find("{{", pos);
    if (open == std::string_view::npos) {
      out.append(tmpl.substr(pos));
      break;
    }
    const auto close = tmpl.find("}}", open + 2);
    if (close == std::string_view::npos) {
      throw Error(ErrorCode::kInvalidArgument, "unterminated placeholder in prompt template");
    }
    out.append(tmpl.substr(pos, open - pos));
    const std::string key(tmpl.substr(open + 2, close - open - 2));
    auto it = vars.find(key);
    if (it == vars.end()) throw Error(ErrorCode::kInvalidArgument, "prompt variable {{" + key + "}} has no value");
    out.append(it->second);
    pos = close + 2;
  }
  return out;
}

PromptTemplate PromptTemplate::from_json(const nlohmann::json& j) {
  try {
    return PromptTemplate{j.at("name").get<std::string>(), j.value("version", 1),
                          j.at("system").get<std::string>(), j.at("user").get<std::string>()};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad prompt template: ") + e.what());
  }
}

std::string PromptTemplate::render_system(const PromptVars& vars) const {
  return render_template(system, vars);
}

std::string PromptTemplate::render_user(const PromptVars& vars) const {
  return render_template(user, vars);
}

PromptLibrary PromptLibrary::load_dir(const std::filesystem::path& dir) {
  PromptLibrary lib;
  for (const auto& file : json_files(dir)) lib.add(PromptTemplate::from_json(read_json(file)));
  return lib;
}

PromptLibrary PromptLibrary::load_default() { return load_dir(data_dir() / "prompts"); }

void PromptLibrary::add(PromptTemplate t) {
  const std::string name = t.name;
  templates_.insert_or_assign(name, std::move(t));
}

const PromptTemplate& PromptLibrary::get(const std::string& name) const {
  auto it = templates_.find(name);
  if (it == templates_.end()) throw Error(ErrorCode::kInvalidArgument, "no prompt template named " + name);
  return it->second;
}

PresetLibrary PresetLibrary::load_dir(const std::filesystem::path& dir) {
  PresetLibrary lib;
  for (const auto& file : json_files(dir)) {
    const nlohmann::json j = read_json(file);
    if (!j.is_array()) throw Error(ErrorCode::kInvalidArgument, file.string() + " must hold a JSON list");
    lib.set(file.stem().string(), j.get<std::vector<std::string>>());
  }
  return lib;
}

PresetLibrary PresetLibrary::load_default() { return load_dir(data_dir() / "presets"); }

void PresetLibrary::set(const std::string& kind, std::vector<std::string> presets) {
  presets_[kind] = std::move(presets);
}

void PresetLibrary::add(const std::string& kind, std::string preset) {
  presets_[kind].push_back(std::move(preset));
}

const std::vector<std::string>& PresetLibrary::presets(const std::string& kind) const {
  static const std::vector<std::string> kNone;
  auto it = presets_.find(kind);
  return it == presets_.end() ? kNone : it->second;
}

std::vector<std::string> PresetLibrary::kinds() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : presets_) out.push_back(k);
  return out;
}

const std::string& PresetLibrary::cycle(const std::string& kind, std::size_t index) const {
  const auto& list = presets(kind);
  if (list.empty()) throw Error(ErrorCode::kInvalidArgument, "no presets for well kind " + kind);
  return list[index % list.size()];
}

nlohmann::json PresetLibrary::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : presets_) j[k] = v;
  return j;
}

}  // namespace phraselette
