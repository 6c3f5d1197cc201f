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
#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "phraselette/wells.hpp"

namespace phraselette {

// Runtime configuration shared by the CLI and the server. JSON file shape:
//
//   {"backend": "mock" | "remote",
//    "logit_url": "...", "instruct_url": "...", "api_key": "...",
//    "timeout_ms": 30000, "retries": 1,
//    "mock": {"logit_fixture": "...", "instruct_fixture": "..."},
//    "phonology": {"lexicon_path": "..."},
//    "pos": {"model_path": "..."},
//    "presets_dir": "...", "prompts_dir": "...", "sessions_dir": "...",
//    "seed": 7}
//
// Empty paths fall back to the bundled data directory. Remote URLs and the
// API key fall back to the PHRASELETTE_* environment variables.
struct EngineConfig {
  std::string backend = "mock";
  std::string logit_url;
  std::string instruct_url;
  std::string api_key;
  int timeout_ms = 30000;
  int retries = 1;
  std::filesystem::path logit_fixture;
  std::filesystem::path instruct_fixture;
  std::filesystem::path lexicon_path;
  std::filesystem::path pos_model_path;
  std::filesystem::path presets_dir;
  std::filesystem::path prompts_dir;
  std::filesystem::path sessions_dir;
  std::optional<std::uint64_t> seed;

  // Throws InvalidArgument.
  static EngineConfig from_json(const nlohmann::json& j);
  // Throws IoError or InvalidArgument.
  static EngineConfig from_file(const std::filesystem::path& path);
};

// Loads lexicon, tagger, prompts and presets and connects the backends.
// Throws IoError for missing files, InvalidArgument for bad settings.
WellServices make_services(const EngineConfig& config);

}  // namespace phraselette
