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
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "json.hpp"
#include "phraselette/lm_backend.hpp"

namespace phraselette {

struct RemoteOptions {
  std::string base_url;  // "http://host:port" with an optional path prefix
  std::string api_key;   // sent as a bearer token when nonempty
  std::chrono::milliseconds connect_timeout{3000};
  std::chrono::milliseconds read_timeout{30000};
  int retries = 1;
  std::chrono::milliseconds backoff{250};
  bool cache = false;
};

// Minimal JSON-over-HTTP transport shared by the remote backends. Network
// failures and 5xx answers are retried; 413 maps to ContextTooLong, other
// failures to BackendUnavailable, and undecodable bodies to
// MalformedResponse.
class JsonTransport {
 public:
  explicit JsonTransport(RemoteOptions options);

  nlohmann::json post(const std::string& path, const nlohmann::json& body) const;

  const RemoteOptions& options() const { return options_; }

 private:
  RemoteOptions options_;
  std::string scheme_host_port_;
  std::string path_prefix_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::string, nlohmann::json> cache_;
};

// Logit tier over HTTP:
//   POST /v1/tokenize {text}                  -> {tokens: [{id, surface}]}
//   POST /v1/logits   {prefix_tokens, top_k}  -> {entries: [{token, surface, logprob}]}
// Entries are kept in the order the server sent them.
class RemoteLogitBackend : public LogitBackend {
 public:
  explicit RemoteLogitBackend(RemoteOptions options, int top_k = 50);

  std::vector<Token> tokenize(std::string_view text) const override;
  LogitResult next_distribution(std::span<const TokenId> prefix) const override;

 private:
  JsonTransport transport_;
  int top_k_;
};

// Instruct tier over HTTP:
//   POST /v1/complete {system, user, max_items, seed?} -> {items: [string]}
class RemoteInstructBackend : public InstructBackend {
 public:
  explicit RemoteInstructBackend(RemoteOptions options);

  std::vector<std::string> complete(const InstructRequest& request) const override;

 private:
  JsonTransport transport_;
};

// Options from PHRASELETTE_LOGIT_URL / PHRASELETTE_INSTRUCT_URL and
// PHRASELETTE_API_KEY. The URL is empty when the variable is unset.
RemoteOptions logit_options_from_env();
RemoteOptions instruct_options_from_env();

}  // namespace phraselette
