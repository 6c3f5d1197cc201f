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

#include "phraselette/engine_config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "phraselette/error.hpp"
#include "phraselette/mock_backend.hpp"
#include "phraselette/paths.hpp"
#include "phraselette/remote_backend.hpp"

namespace phraselette {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::kInvalidArgument, what); }

std::string opt_string(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return {};
  if (!j[key].is_string()) bad(std::string("config \"") + key + "\" must be a string");
  return j[key].get<std::string>();
}

int opt_int(const json& j, const char* key, int fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  if (!j[key].is_number_integer()) bad(std::string("config \"") + key + "\" must be an integer");
  return j[key].get<int>();
}

const json& section(const json& j, const char* key) {
  static const json kEmpty = json::object();
  if (!j.contains(key)) return kEmpty;
  if (!j[key].is_object()) bad(std::string("config \"") + key + "\" must be an object");
  return j[key];
}

std::filesystem::path or_default(const std::filesystem::path& p, const std::filesystem::path& fallback) {
  return p.empty() ? fallback : p;
}

}  // namespace

EngineConfig EngineConfig::from_json(const json& j) {
  if (!j.is_object()) bad("config must be a JSON object");
  EngineConfig c;
  if (std::string b = opt_string(j, "backend"); !b.empty()) c.backend = b;
  if (c.backend != "mock" && c.backend != "remote") bad("backend must be \"mock\" or \"remote\"");
  c.logit_url = opt_string(j, "logit_url");
  c.instruct_url = opt_string(j, "instruct_url");
  c.api_key = opt_string(j, "api_key");
  c.timeout_ms = opt_int(j, "timeout_ms", c.timeout_ms);
  c.retries = opt_int(j, "retries", c.retries);
  if (c.timeout_ms <= 0 || c.retries < 0) bad("timeout_ms must be positive and retries non-negative");
  const json& mock = section(j, "mock");
  c.logit_fixture = opt_string(mock, "logit_fixture");
  c.instruct_fixture = opt_string(mock, "instruct_fixture");
  c.lexicon_path = opt_string(section(j, "phonology"), "lexicon_path");
  c.pos_model_path = opt_string(section(j, "pos"), "model_path");
  c.presets_dir = opt_string(j, "presets_dir");
  c.prompts_dir = opt_string(j, "prompts_dir");
  c.sessions_dir = opt_string(j, "sessions_dir");
  if (j.contains("seed") && !j["seed"].is_null()) {
    if (!j["seed"].is_number_unsigned()) bad("config \"seed\" must be a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  return c;
}

EngineConfig EngineConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  json j = json::parse(buf.str(), nullptr, false);
  if (j.is_discarded()) bad(path.string() + " is not valid JSON");
  return from_json(j);
}

WellServices make_services(const EngineConfig& config) {
  WellServices s;
  const std::filesystem::path data = data_dir();
  if (config.backend == "mock") {
    s.logit = std::make_shared<MockLogitBackend>(
        MockLogitBackend::from_file(or_default(config.logit_fixture, data / "mock" / "logit.json")));
    s.instruct = std::make_shared<MockInstructBackend>(
        MockInstructBackend::from_file(or_default(config.instruct_fixture, data / "mock" / "instruct.json")));
  } else {
    RemoteOptions logit = logit_options_from_env();
    RemoteOptions instruct = instruct_options_from_env();
    if (!config.logit_url.empty()) logit.base_url = config.logit_url;
    if (!config.instruct_url.empty()) instruct.base_url = config.instruct_url;
    for (RemoteOptions* o : {&logit, &instruct}) {
      if (!config.api_key.empty()) o->api_key = config.api_key;
      o->read_timeout = std::chrono::milliseconds(config.timeout_ms);
      o->retries = config.retries;
    }
    // A tier without a URL stays unset; wells needing it report
    // BackendUnavailable when they run.
    if (!logit.base_url.empty()) s.logit = std::make_shared<RemoteLogitBackend>(logit);
    if (!instruct.base_url.empty()) s.instruct = std::make_shared<RemoteInstructBackend>(instruct);
  }
  s.phonology = std::make_shared<Phonology>(std::make_shared<const Lexicon>(
      Lexicon::from_file(or_default(config.lexicon_path, data / "lexicon" / "cmudict-subset.dict"))));
  s.tagger = std::make_shared<PosTagger>(config.pos_model_path.empty() ? PosTagger::load_default()
                                                                       : PosTagger::from_file(config.pos_model_path));
  s.prompts = std::make_shared<PromptLibrary>(config.prompts_dir.empty() ? PromptLibrary::load_default()
                                                                         : PromptLibrary::load_dir(config.prompts_dir));
  s.presets = std::make_shared<PresetLibrary>(config.presets_dir.empty() ? PresetLibrary::load_default()
                                                                         : PresetLibrary::load_dir(config.presets_dir));
  return s;
}

}  // namespace phraselette
