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

#include <optional>
#include <string>

#include "json.hpp"

namespace phraselette {

namespace well_kind {
inline constexpr const char* kWords = "words";
inline constexpr const char* kThesaurus = "thesaurus";
inline constexpr const char* kReader = "reader";
inline constexpr const char* kContext = "context";
inline constexpr const char* kSound = "sound";
inline constexpr const char* kDictionary = "dictionary";
}  // namespace well_kind

// A configured well. `parameters` is a JSON object whose keys depend on the
// kind (see the well descriptors for the accepted keys).
struct WellConfig {
  std::string well_id;
  std::string kind;
  std::optional<std::string> prompt_description;
  nlohmann::json parameters = nlohmann::json::object();

  friend bool operator==(const WellConfig&, const WellConfig&) = default;
};

}  // namespace phraselette
