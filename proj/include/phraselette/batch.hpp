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

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "phraselette/constraints.hpp"
#include "phraselette/document.hpp"
#include "phraselette/error.hpp"
#include "phraselette/wells.hpp"

// Headless constrained search as used by the `phraselette run` command.
namespace phraselette::batch {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitBackend = 3;

// Exit code for an error escaping a batch run.
int exit_code_for(ErrorCode code);

// "10:21" -> [10, 21). Throws InvalidArgument or EmptyRange.
CharRange parse_inlet(std::string_view arg);

// One of
//   words:1-4        words:3
//   syllables:2-5
//   pos:VERB ADV[:mode]            (mode defaults to exact)
//   sound:K AE P[:mode]            (mode defaults to startsWith)
//   band:-20..-8     band:..-8     (open lower bound)
// Throws InvalidArgument.
Constraint parse_constraint(std::string_view arg, const std::string& id);

// "kind" or "kind:prompt description".
WellConfig parse_well(std::string_view arg, const std::string& well_id);

struct Request {
  std::string text;
  CharRange inlet;
  std::vector<std::string> wells;        // well specs
  std::vector<std::string> constraints;  // constraint specs
  // Per-kind parameter objects, applied to every well of that kind.
  std::map<std::string, nlohmann::json> parameters;
  std::optional<std::uint64_t> seed;
  std::chrono::milliseconds timeout{120000};
};

struct Result {
  nlohmann::json output;
  int exit_code = kExitOk;
};

// Runs every well once on the inlet and returns the pooled job. The exit
// code is kExitBackend when a well failed for backend reasons. Throws Error
// for invalid requests.
Result run(const Request& request, std::shared_ptr<const WellRegistry> registry, const WellServices& services);

// Plain-text table of the pooled rephrasings.
std::string render_table(const nlohmann::json& output);

}  // namespace phraselette::batch
