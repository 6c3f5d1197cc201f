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
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace phraselette {

using TokenId = std::int32_t;

struct Token {
  TokenId id = 0;
  std::string surface;

  friend bool operator==(const Token&, const Token&) = default;
};

std::string detokenize(std::span<const Token> tokens);
std::vector<TokenId> token_ids(std::span<const Token> tokens);

// Log-probability charged for a token that a distribution does not list
// (zero-probability in a mock table, or outside a remote top-k).
inline constexpr double kUnseenLogProb = -30.0;

struct LogitEntry {
  Token token;
  double log_prob = 0.0;  // natural log, always <= 0
};

struct LogitResult {
  std::vector<TokenId> prefix;
  std::vector<LogitEntry> entries;

  std::optional<double> log_prob_of(TokenId id) const;
  // Sum of exp(log_prob) over the listed entries.
  double probability_mass() const;
};

// Logit tier: token distributions over a vocabulary. Implementations must be
// safe for concurrent calls.
class LogitBackend {
 public:
  virtual ~LogitBackend() = default;

  virtual std::vector<Token> tokenize(std::string_view text) const = 0;

  // Throws BackendUnavailable or ContextTooLong.
  virtual LogitResult next_distribution(std::span<const TokenId> prefix) const = 0;

  // Log-probability of each token of `tokens` given `context` and the tokens
  // before it. Unlisted tokens score kUnseenLogProb.
  virtual std::vector<double> step_log_probs(std::span<const TokenId> tokens,
                                             std::span<const TokenId> context = {}) const;

  // Sum of step_log_probs; `tokens` must be nonempty.
  double score_sequence(std::span<const TokenId> tokens,
                        std::span<const TokenId> context = {}) const;
};

struct InstructRequest {
  std::string system_text;
  std::string user_text;
  int max_output_items = 1;
  std::optional<std::uint64_t> seed;

  // Throws InvalidArgument when user_text is empty or max_output_items < 1.
  void validate() const;

  friend bool operator==(const InstructRequest&, const InstructRequest&) = default;
};

// Instruct tier: prompted completions returned as a list of items.
class InstructBackend {
 public:
  virtual ~InstructBackend() = default;

  // Returns 1..max_output_items nonempty items. Throws BackendUnavailable or
  // MalformedResponse.
  virtual std::vector<std::string> complete(const InstructRequest& request) const = 0;
};

// Splits raw completion text into items: one per line, trimmed, blank lines
// dropped, list markers and surrounding quotes removed.
std::vector<std::string> parse_items(std::string_view raw);

// Applies parse_items to every raw item and caps the result. Throws
// MalformedResponse when nothing usable remains.
std::vector<std::string> clean_items(const std::vector<std::string>& raw, int max_items);

// Decorators that remember every request, for prompt-inclusion checks and
// usage logs.
class RecordingLogitBackend : public LogitBackend {
 public:
  explicit RecordingLogitBackend(std::shared_ptr<const LogitBackend> inner)
      : inner_(std::move(inner)) {}

  std::vector<Token> tokenize(std::string_view text) const override;
  LogitResult next_distribution(std::span<const TokenId> prefix) const override;

  std::vector<std::string> tokenized_texts() const;
  std::vector<std::vector<TokenId>> prefixes() const;
  void clear();

 private:
  std::shared_ptr<const LogitBackend> inner_;
  mutable std::mutex mutex_;
  mutable std::vector<std::string> tokenized_;
  mutable std::vector<std::vector<TokenId>> prefixes_;
};

class RecordingInstructBackend : public InstructBackend {
 public:
  explicit RecordingInstructBackend(std::shared_ptr<const InstructBackend> inner)
      : inner_(std::move(inner)) {}

  std::vector<std::string> complete(const InstructRequest& request) const override;

  std::vector<InstructRequest> requests() const;
  void clear();

 private:
  std::shared_ptr<const InstructBackend> inner_;
  mutable std::mutex mutex_;
  mutable std::vector<InstructRequest> requests_;
};

}  // namespace phraselette
