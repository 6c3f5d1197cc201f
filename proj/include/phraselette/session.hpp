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
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "phraselette/constraints.hpp"
#include "phraselette/document.hpp"
#include "phraselette/rephrasing.hpp"
#include "phraselette/well_config.hpp"

namespace phraselette {

inline constexpr int kSessionSchemaVersion = 1;

// Pool of one job as it stood when recorded. Never edited afterwards.
struct PoolSnapshot {
  std::string inlet_id;
  std::int64_t generation = 0;
  std::string job_id;
  std::vector<Rephrasing> pool;

  friend bool operator==(const PoolSnapshot&, const PoolSnapshot&) = default;
};

struct SessionEvent {
  std::int64_t seq = 0;
  std::int64_t time_ms = 0;  // milliseconds since the Unix epoch
  std::string actor;         // "user" or "system"
  std::string type;
  nlohmann::json detail = nlohmann::json::object();

  friend bool operator==(const SessionEvent&, const SessionEvent&) = default;
};

struct Session {
  std::string id;
  Document document;
  std::vector<WellConfig> well_configs;
  // Wells that new inlets start with.
  std::set<std::string> active_wells;
  // Constraints set directly through the API or CLI.
  std::vector<Constraint> constraints;
  std::vector<PoolSnapshot> history;
  std::vector<SessionEvent> event_log;

  // Appends an event; times never run backwards within a log.
  const SessionEvent& log_event(std::string actor, std::string type,
                                nlohmann::json detail = nlohmann::json::object());
  const SessionEvent& log_event_at(std::int64_t time_ms, std::string actor, std::string type,
                                   nlohmann::json detail = nlohmann::json::object());

  const WellConfig* find_well(const std::string& well_id) const;
  WellConfig* find_well(const std::string& well_id);

  friend bool operator==(const Session&, const Session&) = default;
};

// {schema_version, id, document, well_configs, active_wells, constraints,
// history, event_log}
nlohmann::json session_to_json(const Session& session);
// Throws SchemaVersionMismatch or InvalidArgument.
Session session_from_json(const nlohmann::json& j);

// Writes to a temporary file next to `path` and renames it into place.
// Throws IoError.
void save_session(const Session& session, const std::filesystem::path& path);
// Throws IoError, SchemaVersionMismatch or InvalidArgument.
Session load_session(const std::filesystem::path& path);

std::int64_t now_ms();

}  // namespace phraselette
