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

#include "phraselette/lm_backend.hpp"

#include <cmath>

#include "phraselette/error.hpp"
#include "phraselette/text.hpp"

namespace phraselette {

std::string detokenize(std::span<const Token> tokens) {
  std::string out;
  for (const Token& t : tokens) out += t.surface;
  return out;
}

std::vector<TokenId> token_ids(std::span<const Token> tokens) {
  std::vector<TokenId> ids;
  ids.reserve(tokens.size());
  for (const Token& t : tokens) ids.push_back(t.id);
  return ids;
}

std::optional<double> LogitResult::log_prob_of(TokenId id) const {
  for (const LogitEntry& e : entries) {
    if (e.token.id == id) return e.log_prob;
  }
  return std::nullopt;
}

double LogitResult::probability_mass() const {
  double mass = 0.0;
  for (const LogitEntry& e : entries) mass += std::exp(e.log_prob);
  return mass;
}

std::vector<double> LogitBackend::step_log_probs(std::span<const TokenId> tokens,
                                                 std::span<const TokenId> context) const {
  std::vector<TokenId> prefix(context.begin(), context.end());
  std::vector<double> out;
  out.reserve(tokens.size());
  for (TokenId id : tokens) {
    const LogitResult dist = next_distribution(prefix);
    out.push_back(dist.log_prob_of(id).value_or(kUnseenLogProb));
    prefix.push_back(id);
  }
  return out;
}

double LogitBackend::score_sequence(std::span<const TokenId> tokens,
                                    std::span<const TokenId> context) const {
  if (tokens.empty()) throw Error(ErrorCode::kInvalidArgument, "cannot score an empty sequence");
  double total = 0.0;
  for (double lp : step_log_probs(tokens, context)) total += lp;
  return total;
}

void InstructRequest::validate() const {
  if (user_text.empty()) throw Error(ErrorCode::kInvalidArgument, "instruct request has empty user text");
  if (max_output_items < 1) throw Error(ErrorCode::kInvalidArgument, "max_output_items must be >= 1");
}

namespace {

std::string_view strip_list_marker(std::string_view s) {
  for (std::string_view marker : {"- ", "* ", "\xE2\x80\xA2 "}) {
    if (s.starts_with(marker)) return text::trim(s.substr(marker.size()));
  }
  std::size_t digits = 0;
  while (digits < s.size() && s[digits] >= '0' && s[digits] <= '9') ++digits;
  if (digits > 0 && digits + 1 < s.size() && (s[digits] == '.' || s[digits] == ')') &&
      s[digits + 1] == ' ') {
    return text::trim(s.substr(digits + 2));
  }
  return s;
}

std::string_view strip_quotes(std::string_view s) {
  static constexpr std::pair<std::string_view, std::string_view> kPairs[] = {
      {"\"", "\""}, {"'", "'"}, {"\xE2\x80\x9C", "\xE2\x80\x9D"}, {"\xE2\x80\x98", "\xE2\x80\x99"}};
  for (const auto& [open, close] : kPairs) {
    if (s.size() >= open.size() + close.size() && s.starts_with(open) && s.ends_with(close)) {
      return text::trim(s.substr(open.size(), s.size() - open.size() - close.size()));
    }
  }
  return s;
}

}  // namespace

std::vector<std::string> parse_items(std::string_view raw) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= raw.size()) {
    std::size_t nl = raw.find('\n', start);
    if (nl == std::string_view::npos) nl = raw.size();
    std::string_view line = text::trim(raw.substr(start, nl - start));
    line = strip_quotes(strip_list_marker(line));
    if (!line.empty()) items.emplace_back(line);
    start = nl + 1;
  }
  return items;
}

std::vector<std::string> clean_items(const std::vector<std::string>& raw, int max_items) {
  std::vector<std::string> items;
  for (const std::string& r : raw) {
    for (std::string& item : parse_items(r)) {
      if (static_cast<int>(items.size()) >= max_items) break;
      items.push_back(std::move(item));
    }
  }
  if (items.empty()) throw Error(ErrorCode::kMalformedResponse, "completion contained no usable items");
  return items;
}

std::vector<Token> RecordingLogitBackend::tokenize(std::string_view s) const {
  {
    std::lock_guard lock(mutex_);
    tokenized_.emplace_back(s);
  }
  return inner_->tokenize(s);
}

LogitResult RecordingLogitBackend::next_distribution(std::span<const TokenId> prefix) const {
  {
    std::lock_guard lock(mutex_);
    prefixes_.emplace_back(prefix.begin(), prefix.end());
  }
  return inner_->next_distribution(prefix);
}

std::vector<std::string> RecordingLogitBackend::tokenized_texts() const {
  std::lock_guard lock(mutex_);
  return tokenized_;
}

std::vector<std::vector<TokenId>> RecordingLogitBackend::prefixes() const {
  std::lock_guard lock(mutex_);
  return prefixes_;
}

void RecordingLogitBackend::clear() {
  std::lock_guard lock(mutex_);
  tokenized_.clear();
  prefixes_.clear();
}

std::vector<std::string> RecordingInstructBackend::complete(const InstructRequest& request) const {
  {
    std::lock_guard lock(mutex_);
    requests_.push_back(request);
  }
  return inner_->complete(request);
}

std::vector<InstructRequest> RecordingInstructBackend::requests() const {
  std::lock_guard lock(mutex_);
  return requests_;
}

void RecordingInstructBackend::clear() {
  std::lock_guard lock(mutex_);
  requests_.clear();
}

}  // namespace phraselette
