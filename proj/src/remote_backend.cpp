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

#include "phraselette/remote_backend.hpp"

#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "phraselette/error.hpp"

namespace phraselette {

namespace {

std::string env_or_empty(const char* name) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : std::string();
}

RemoteOptions options_from_env(const char* url_var) {
  RemoteOptions o;
  o.base_url = env_or_empty(url_var);
  o.api_key = env_or_empty("PHRASELETTE_API_KEY");
  return o;
}

}  // namespace

RemoteOptions logit_options_from_env() { return options_from_env("PHRASELETTE_LOGIT_URL"); }
RemoteOptions instruct_options_from_env() { return options_from_env("PHRASELETTE_INSTRUCT_URL"); }

JsonTransport::JsonTransport(RemoteOptions options) : options_(std::move(options)) {
  const std::string& url = options_.base_url;
  const auto scheme_end = url.find("://");
  if (url.empty() || scheme_end == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument, "backend url must look like http://host:port, got \"" + url + "\"");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  if (path_start != std::string::npos) {
    path_prefix_ = url.substr(path_start);
    while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
  }
}

nlohmann::json JsonTransport::post(const std::string& path, const nlohmann::json& body) const {
  const std::string payload = body.dump();
  const std::string cache_key = path + '\n' + payload;
  if (options_.cache) {
    std::lock_guard lock(cache_mutex_);
    if (auto it = cache_.find(cache_key); it != cache_.end()) return it->second;
  }

  std::string last_error;
  for (int attempt = 0; attempt <= options_.retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(options_.backoff * attempt);

    httplib::Client client(scheme_host_port_);
    client.set_connection_timeout(options_.connect_timeout);
    client.set_read_timeout(options_.read_timeout);
    client.set_write_timeout(options_.read_timeout);
    httplib::Headers headers;
    if (!options_.api_key.empty()) headers.emplace("Authorization", "Bearer " + options_.api_key);

    auto res = client.Post(path_prefix_ + path, headers, payload, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status == 413) {
      throw Error(ErrorCode::kContextTooLong, "backend rejected the prefix as too long");
    }
    if (res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      throw Error(ErrorCode::kBackendUnavailable,
                  scheme_host_port_ + path + " answered HTTP " + std::to_string(res->status));
    }
    if (res->body.empty()) throw Error(ErrorCode::kMalformedResponse, "backend returned an empty body");
    nlohmann::json parsed = nlohmann::json::parse(res->body, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object()) {
      throw Error(ErrorCode::kMalformedResponse, "backend returned a body that is not a JSON object");
    }
    if (options_.cache) {
      std::lock_guard lock(cache_mutex_);
      cache_.emplace(cache_key, parsed);
    }
    return parsed;
  }
  throw Error(ErrorCode::kBackendUnavailable, scheme_host_port_ + path + ": " + last_error);
}

RemoteLogitBackend::RemoteLogitBackend(RemoteOptions options, int top_k)
    : transport_(std::move(options)), top_k_(top_k) {
  if (top_k_ < 1) throw Error(ErrorCode::kInvalidArgument, "top_k must be >= 1");
}

std::vector<Token> RemoteLogitBackend::tokenize(std::string_view s) const {
  if (s.empty()) return {};
  const nlohmann::json res = transport_.post("/v1/tokenize", {{"text", std::string(s)}});
  std::vector<Token> out;
  try {
    for (const auto& t : res.at("tokens")) {
      out.push_back(Token{t.at("id").get<TokenId>(), t.at("surface").get<std::string>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedResponse, std::string("bad tokenize response: ") + e.what());
  }
  if (detokenize(out) != s) {
    throw Error(ErrorCode::kMalformedResponse, "tokenize response does not reproduce the text");
  }
  return out;
}

LogitResult RemoteLogitBackend::next_distribution(std::span<const TokenId> prefix) const {
  nlohmann::json body;
  body["prefix_tokens"] = std::vector<TokenId>(prefix.begin(), prefix.end());
  body["top_k"] = top_k_;
  const nlohmann::json res = transport_.post("/v1/logits", body);
  LogitResult result;
  result.prefix.assign(prefix.begin(), prefix.end());
  try {
    for (const auto& e : res.at("entries")) {
      LogitEntry entry{Token{e.at("token").get<TokenId>(), e.at("surface").get<std::string>()},
                       e.at("logprob").get<double>()};
      if (!(entry.log_prob <= 0.0)) {
        throw Error(ErrorCode::kMalformedResponse, "backend returned a positive log-probability");
      }
      result.entries.push_back(std::move(entry));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedResponse, std::string("bad logits response: ") + e.what());
  }
  return result;
}

RemoteInstructBackend::RemoteInstructBackend(RemoteOptions options) : transport_(std::move(options)) {}

std::vector<std::string> RemoteInstructBackend::complete(const InstructRequest& request) const {
  request.validate();
  nlohmann::json body = {{"system", request.system_text},
                         {"user", request.user_text},
                         {"max_items", request.max_output_items}};
  if (request.seed) body["seed"] = *request.seed;
  const nlohmann::json res = transport_.post("/v1/complete", body);
  std::vector<std::string> raw;
  try {
    raw = res.at("items").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedResponse, std::string("bad completion response: ") + e.what());
  }
  return clean_items(raw, request.max_output_items);
}

}  // namespace phraselette
