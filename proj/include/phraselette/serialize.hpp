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

#include "json.hpp"
#include "phraselette/constraints.hpp"
#include "phraselette/document.hpp"
#include "phraselette/orchestrator.hpp"
#include "phraselette/rephrasing.hpp"
#include "phraselette/well_config.hpp"
#include "phraselette/wells.hpp"

// JSON encodings shared by sessions, the HTTP API and the CLI. Decoders throw
// InvalidArgument on shape errors and re-validate domain invariants.
namespace phraselette::wire {

using nlohmann::json;

json encode(const Inlet& inlet);
Inlet decode_inlet(const json& j);

// {id, text, inlets, revision, nextInletSeq}
json encode(const Document& doc);
Document decode_document(const json& j);

json encode(const TokenView& token);
TokenView decode_token_view(const json& j);

json encode(const Rephrasing& r);
Rephrasing decode_rephrasing(const json& j);

// {id, kind, mode?, payload, sourceWellId}; a band minimum of -infinity is
// written as null.
json encode(const Constraint& c);
Constraint decode_constraint(const json& j);

// {wellId, kind, promptDescription?, parameters}
json encode(const WellConfig& config);
WellConfig decode_well_config(const json& j);

json encode(const Insight& insight);
Insight decode_insight(const json& j);

// {jobId, inletId, generation, complete, wells: {id: status}, failures:
// {id: reason}, rephrasings, newRephrasings, nextCursor, insights,
// constraints}. Rephrasings carry their well's provenance color.
json encode(const JobSnapshot& snapshot);

// Shape checking helpers.
const json& require(const json& j, const char* key);
std::string require_string(const json& j, const char* key);

}  // namespace phraselette::wire
