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

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "phraselette/lm_backend.hpp"

namespace phraselette {

// Deterministic logit backend driven by a transition table.
//
// Fixture JSON: {"vocab": [surface, ...],
//                "transitions": {"<ctx ids joined by ','>": {"<id>": prob}},
//                "max_context": n (optional)}
//
// The distribution for a prefix comes from the longest suffix of the prefix
// that has a table row ("" is the unigram row). Listed probabilities are kept
// as given; leftover mass is spread evenly over the unlisted tokens, or the
// row is renormalised when every token is listed. Without any matching row
// the distribution is uniform. Tokens with zero probability are omitted.
//
// Tokenization is greedy longest-match over the vocabulary; text no
// vocabulary entry covers becomes an unknown token with id == vocab size.
class MockLogitBackend : public LogitBackend {
 public:
  static MockLogitBackend from_json(const nlohmann::json& fixture);
  static MockLogitBackend from_file(const std::filesystem::path& path);

  std::vector<Token> tokenize(std::string_view text) const override;
  LogitResult next_distribution(std::span<const TokenId> prefix) const override;

  const std::vector<std::string>& vocab() const { return vocab_; }
  TokenId unknown_id() const { return static_cast<TokenId>(vocab_.size()); }
  std::size_t max_context() const { return max_context_; }

 private:
  MockLogitBackend() = default;

  std::vector<std::string> vocab_;
  std::map<std::vector<TokenId>, std::vector<std::pair<TokenId, double>>> rows_;
  std::size_t longest_context_ = 0;
  std::size_t max_context_ = 4096;
};

// Canned instruct backend. The first rule whose marker occurs in the system
// or user text answers the request.
//
// Fixture JSON: {"rules": [{"marker": s, "items": [s, ...],
//                           "min_items": n?, "max_items": n?}],
//                "fallback_items": [s, ...]?}
//
// A rule without a count range returns its items in order. With a range the
// item count and the order are drawn from a generator seeded by
// (request text, request seed), so the backend is a pure function of the
// request. Results are always capped at max_output_items.
class MockInstructBackend : public InstructBackend {
 public:
  struct Rule {
    std::string marker;
    std::vector<std::string> items;
    std::optional<int> min_items;
    std::optional<int> max_items;
  };

  explicit MockInstructBackend(std::vector<Rule> rules, std::vector<std::string> fallback = {});
  static MockInstructBackend from_json(const nlohmann::json& fixture);
  static MockInstructBackend from_file(const std::filesystem::path& path);

  std::vector<std::string> complete(const InstructRequest& request) const override;

 private:
  std::vector<Rule> rules_;
  std::vector<std::string> fallback_;
};

}  // namespace phraselette
