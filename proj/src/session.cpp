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

#include "phraselette/session.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include "phraselette/error.hpp"
#include "phraselette/serialize.hpp"

namespace phraselette {

using nlohmann::json;

std::int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

const SessionEvent& Session::log_event(std::string actor, std::string type, json detail) {
  return log_event_at(now_ms(), std::move(actor), std::move(type), std::move(detail));
}

const SessionEvent& Session::log_event_at(std::int64_t time_ms, std::string actor, std::string type,
                                          json detail) {
  SessionEvent e;
  e.seq = event_log.empty() ? 1 : event_log.back().seq + 1;
  e.time_ms = event_log.empty() ? time_ms : std::max(time_ms, event_log.back().time_ms);
  e.actor = std::move(actor);
  e.type = std::move(type);
  e.detail = std::move(detail);
  event_log.push_back(std::move(e));
  return event_log.back();
}

const WellConfig* Session::find_well(const std::string& well_id) const {
  auto it = std::ranges::find(well_configs, well_id, &WellConfig::well_id);
  return it == well_configs.end() ? nullptr : &*it;
}

WellConfig* Session::find_well(const std::string& well_id) {
  auto it = std::ranges::find(well_configs, well_id, &WellConfig::well_id);
  return it == well_configs.end() ? nullptr : &*it;
}

json session_to_json(const Session& s) {
  json wells = json::array();
  for (const WellConfig& w : s.well_configs) wells.push_back(wire::encode(w));
  json constraints = json::array();
  for (const Constraint& c : s.constraints) constraints.push_back(wire::encode(c));
  json history = json::array();
  for (const PoolSnapshot& h : s.history) {
    json pool = json::array();
    for (const Rephrasing& r : h.pool) pool.push_back(wire::encode(r));
    history.push_back({{"inletId", h.inlet_id}, {"generation", h.generation}, {"jobId", h.job_id}, {"pool", pool}});
  }
  json events = json::array();
  for (const SessionEvent& e : s.event_log) {
    events.push_back({{"seq", e.seq}, {"timeMs", e.time_ms}, {"actor", e.actor}, {"type", e.type}, {"detail", e.detail}});
  }
  return {{"schema_version", kSessionSchemaVersion},
          {"id", s.id},
          {"document", wire::encode(s.document)},
          {"well_configs", wells},
          {"active_wells", s.active_wells},
          {"constraints", constraints},
          {"history", history},
          {"event_log", events}};
}

namespace {

const json& list_field(const json& j, const char* key) {
  static const json kEmpty = json::array();
  auto it = j.find(key);
  if (it == j.end()) return kEmpty;
  if (!it->is_array()) throw Error(ErrorCode::kInvalidArgument, std::string("\"") + key + "\" must be a list");
  return *it;
}

}  // namespace

Session session_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kInvalidArgument, "session must be a JSON object");
  const json& version = wire::require(j, "schema_version");
  if (!version.is_number_integer() || version.get<std::int64_t>() != kSessionSchemaVersion) {
    throw Error(ErrorCode::kSchemaVersionMismatch,
                "unsupported session schema_version " + version.dump() + " (expected " +
                    std::to_string(kSessionSchemaVersion) + ")");
  }
  Session s;
  s.id = j.contains("id") ? wire::require_string(j, "id") : std::string();
  s.document = wire::decode_document(wire::require(j, "document"));
  for (const json& w : list_field(j, "well_configs")) s.well_configs.push_back(wire::decode_well_config(w));
  for (const json& a : list_field(j, "active_wells")) {
    if (!a.is_string()) throw Error(ErrorCode::kInvalidArgument, "active_wells must hold strings");
    s.active_wells.insert(a.get<std::string>());
  }
  for (const json& c : list_field(j, "constraints")) s.constraints.push_back(wire::decode_constraint(c));
  for (const json& h : list_field(j, "history")) {
    PoolSnapshot p;
    p.inlet_id = wire::require_string(h, "inletId");
    p.generation = wire::require(h, "generation").get<std::int64_t>();
    p.job_id = h.contains("jobId") ? wire::require_string(h, "jobId") : std::string();
    for (const json& r : list_field(h, "pool")) p.pool.push_back(wire::decode_rephrasing(r));
    s.history.push_back(std::move(p));
  }
  std::int64_t last_time = std::numeric_limits<std::int64_t>::min();
  for (const json& e : list_field(j, "event_log")) {
    SessionEvent ev;
    ev.seq = wire::require(e, "seq").get<std::int64_t>();
    ev.time_ms = wire::require(e, "timeMs").get<std::int64_t>();
    ev.actor = wire::require_string(e, "actor");
    ev.type = wire::require_string(e, "type");
    if (e.contains("detail")) ev.detail = e["detail"];
    if (ev.time_ms < last_time) throw Error(ErrorCode::kInvalidArgument, "event_log runs backwards in time");
    last_time = ev.time_ms;
    s.event_log.push_back(std::move(ev));
  }
  return s;
}

void save_session(const Session& session, const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp.string());
    out << session_to_json(session).dump(2) << '\n';
    out.flush();
    if (!out) throw Error(ErrorCode::kIoError, "failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIoError, "cannot move session into place at " + path.string());
  }
}

Session load_session(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  json j = json::parse(buf.str(), nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::kIoError, path.string() + " is not valid JSON");
  return session_from_json(j);
}

}  // namespace phraselette
