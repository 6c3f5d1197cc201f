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

#include "phraselette/error.hpp"

#include "phraselette/sequence_match.hpp"

namespace phraselette {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kOutOfBounds: return "OutOfBounds";
    case ErrorCode::kOverlappingInlet: return "OverlappingInlet";
    case ErrorCode::kEmptyRange: return "EmptyRange";
    case ErrorCode::kStaleGeneration: return "StaleGeneration";
    case ErrorCode::kUnknownInlet: return "UnknownInlet";
    case ErrorCode::kUnknownDocument: return "UnknownDocument";
    case ErrorCode::kUnknownWell: return "UnknownWell";
    case ErrorCode::kUnknownJob: return "UnknownJob";
    case ErrorCode::kUnknownRephrasing: return "UnknownRephrasing";
    case ErrorCode::kNoActiveWells: return "NoActiveWells";
    case ErrorCode::kBackendUnavailable: return "BackendUnavailable";
    case ErrorCode::kContextTooLong: return "ContextTooLong";
    case ErrorCode::kMalformedResponse: return "MalformedResponse";
    case ErrorCode::kUnpronounceable: return "Unpronounceable";
    case ErrorCode::kMissingAnnotation: return "MissingAnnotation";
    case ErrorCode::kNoHypotheses: return "NoHypotheses";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kSchemaVersionMismatch: return "SchemaVersionMismatch";
  }
  return "Unknown";
}

std::string_view to_string(MatchMode mode) {
  switch (mode) {
    case MatchMode::kExact: return "exact";
    case MatchMode::kStartsWith: return "startsWith";
    case MatchMode::kEndsWith: return "endsWith";
    case MatchMode::kContains: return "contains";
    case MatchMode::kInOrder: return "inOrder";
  }
  return "exact";
}

std::optional<MatchMode> parse_match_mode(std::string_view name) {
  for (MatchMode m : {MatchMode::kExact, MatchMode::kStartsWith, MatchMode::kEndsWith,
                      MatchMode::kContains, MatchMode::kInOrder}) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

}  // namespace phraselette
