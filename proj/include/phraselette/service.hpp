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

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "json.hpp"
#include "phraselette/error.hpp"
#include "phraselette/orchestrator.hpp"
#include "phraselette/session.hpp"

namespace phraselette {

// HTTP status for an engine error.
int http_status(ErrorCode code);
// {"error": {"code": "...", "message": "..."}}
nlohmann::json error_body(const Error& error);

struct ServiceOptions {
  // Sessions are written here after every mutation when nonempty.
  std::filesystem::path sessions_dir;
  std::optional<std::uint64_t> seed;
};

// Document, well and job management behind the HTTP API. Every method takes
// and returns the JSON bodies of the matching endpoint and throws Error.
// Mutations are serialized per document; jobs run in the background.
class Service {
 public:
  Service(std::shared_ptr<const WellRegistry> registry, WellServices services, ServiceOptions options = {});
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // POST /documents {text, id?}
  nlohmann::json create_document(const nlohmann::json& body);
  // GET /documents/{id}
  nlohmann::json get_document(const std::string& doc_id);
  // POST /documents/{id}/inlets {start, end, activeWellIds?}
  nlohmann::json create_inlet(const std::string& doc_id, const nlohmann::json& body);
  // DELETE /inlets/{id}
  nlohmann::json delete_inlet(const std::string& inlet_id);
  // GET /wells/presets
  nlohmann::json presets() const;
  // POST /documents/{id}/wells {kind, promptDescription?, parameters?, active?}
  nlohmann::json add_well(const std::string& doc_id, const nlohmann::json& body);
  // PATCH /wells/{id} {active?, inletId?, promptDescription?, parameters?, constraints?}
  nlohmann::json update_well(const std::string& well_id, const nlohmann::json& body);
  // POST /documents/{id}/inlets/{id}/run {wellIds?} | {all: true}
  nlohmann::json run(const std::string& doc_id, const std::string& inlet_id, const nlohmann::json& body);
  // GET /jobs/{id}?cursor=n
  nlohmann::json poll(const std::string& job_id, std::size_t cursor = 0) const;
  // POST /inlets/{id}/accept {rephrasingId, jobId?}
  nlohmann::json accept(const std::string& inlet_id, const nlohmann::json& body);
  // GET /sessions/{id}
  nlohmann::json get_session(const std::string& session_id);
  // PUT /sessions/{id}
  nlohmann::json put_session(const std::string& session_id, const nlohmann::json& body);

  // Blocks until the job settles; false on timeout. Throws UnknownJob.
  bool wait_job(const std::string& job_id,
                std::chrono::milliseconds timeout = std::chrono::milliseconds(30000)) const;

  const WellRegistry& registry() const { return orchestrator_.registry(); }

 private:
  struct DocState;

  std::shared_ptr<DocState> doc(const std::string& doc_id);
  std::shared_ptr<DocState> doc_with_inlet(const std::string& inlet_id);
  std::shared_ptr<DocState> doc_with_well(const std::string& well_id);
  std::shared_ptr<RunJob> find_job(const std::string& job_id) const;
  std::shared_ptr<DocState> install(Session session);
  void record_history(DocState& state, const std::string& inlet_id);
  void persist(const DocState& state) const;
  nlohmann::json document_view(const DocState& state) const;

  Orchestrator orchestrator_;
  ServiceOptions options_;

  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<DocState>> docs_;
  std::map<std::string, std::shared_ptr<RunJob>> jobs_;
  std::int64_t next_doc_ = 1;
  std::int64_t next_job_ = 1;
};

// Binds the Service to HTTP routes.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();

  // Binds to an ephemeral port and returns it, or -1.
  int bind_any_port(const std::string& host = "127.0.0.1");
  bool bind(const std::string& host, int port);
  // Serves until stop(); call after a successful bind.
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace phraselette
