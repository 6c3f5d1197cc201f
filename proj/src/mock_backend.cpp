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

#include "phraselette/mock_backend.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "phraselette/error.hpp"
#include "phraselette/rng.hpp"
#include "phraselette/text.hpp"

namespace phraselette {

namespace {

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, path.string() + ": " + e.what());
  }
}

std::vector<TokenId> parse_context_key(const std::string& key, std::size_t vocab_size) {
  std::vector<TokenId> ids;
  if (key.empty()) return ids;
  std::size_t start = 0;
  while (start <= key.size()) {
    std::size_t comma = key.find(',', start);
    if (comma == std::string::npos) comma = key.size();
    const std::string part = key.substr(start, comma - start);
    std::size_t used = 0;
    long value = -1;
    try {
      value = std::stol(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != part.size() || value < 0 || static_cast<std::size_t>(value) > vocab_size) {
      throw Error(ErrorCode::kInvalidArgument, "bad context key \"" + key + "\"");
    }
    ids.push_back(static_cast<TokenId>(value));
    start = comma + 1;
  }
  return ids;
}

}  // namespace

MockLogitBackend MockLogitBackend::from_json(const nlohmann::json& fixture) {
  MockLogitBackend m;
  if (!fixture.contains("vocab") || !fixture["vocab"].is_array()) {
    throw Error(ErrorCode::kInvalidArgument, "mock fixture needs a vocab array");
  }
  std::set<std::string> seen;
  for (const auto& v : fixture["vocab"]) {
    auto s = v.get<std::string>();
    if (s.empty()) throw Error(ErrorCode::kInvalidArgument, "vocab entries must be nonempty");
    if (!seen.insert(s).second) throw Error(ErrorCode::kInvalidArgument, "duplicate vocab entry \"" + s + "\"");
    m.vocab_.push_back(std::move(s));
  }
  if (m.vocab_.empty()) throw Error(ErrorCode::kInvalidArgument, "vocab is empty");
  if (fixture.contains("max_context")) m.max_context_ = fixture["max_context"].get<std::size_t>();

  const auto& transitions = fixture.value("transitions", nlohmann::json::object());
  for (const auto& [key, row] : transitions.items()) {
    std::vector<TokenId> ctx = parse_context_key(key, m.vocab_.size());
    std::vector<std::pair<TokenId, double>> entries;
    double sum = 0.0;
    for (const auto& [tok, prob] : row.items()) {
      const std::vector<TokenId> id = parse_context_key(tok, m.vocab_.size() - 1);
      const double p = prob.get<double>();
      if (id.size() != 1 || p < 0.0 || p > 1.0) {
        throw Error(ErrorCode::kInvalidArgument, "bad transition entry in row \"" + key + "\"");
      }
      sum += p;
      if (p > 0.0) entries.emplace_back(id[0], p);
    }
    if (sum > 1.0 + 1e-6) {
      throw Error(ErrorCode::kInvalidArgument, "transition row \"" + key + "\" sums above 1");
    }
    std::ranges::sort(entries);
    m.longest_context_ = std::max(m.longest_context_, ctx.size());
    m.rows_[std::move(ctx)] = std::move(entries);
  }
  return m;
}

MockLogitBackend MockLogitBackend::from_file(const std::filesystem::path& path) {
  return from_json(read_json_file(path));
}

std::vector<Token> MockLogitBackend::tokenize(std::string_view s) const {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t best_len = 0;
    TokenId best = -1;
    for (std::size_t id = 0; id < vocab_.size(); ++id) {
      const std::string& v = vocab_[id];
      if (v.size() > best_len && s.compare(i, v.size(), v) == 0) {
        best_len = v.size();
        best = static_cast<TokenId>(id);
      }
    }
    if (best >= 0) {
      out.push_back(Token{best, vocab_[static_cast<std::size_t>(best)]});
      i += best_len;
      continue;
    }
    const std::size_t len =
        std::min(text::utf8_sequence_length(static_cast<unsigned char>(s[i])), s.size() - i);
    if (!out.empty() && out.back().id == unknown_id()) {
      out.back().surface.append(s.substr(i, len));
    } else {
      out.push_back(Token{unknown_id(), std::string(s.substr(i, len))});
    }
    i += len;
  }
  return out;
}

LogitResult MockLogitBackend::next_distribution(std::span<const TokenId> prefix) const {
  if (prefix.size() > max_context_) {
    throw Error(ErrorCode::kContextTooLong, "prefix of " + std::to_string(prefix.size()) +
                                                " tokens exceeds the mock context of " +
                                                std::to_string(max_context_));
  }
  for (TokenId id : prefix) {
    if (id < 0 || id > unknown_id()) {
      throw Error(ErrorCode::kInvalidArgument, "token id " + std::to_string(id) + " is not in the vocabulary");
    }
  }

  const std::size_t n = vocab_.size();
  std::vector<double> probs(n, 0.0);
  const std::vector<std::pair<TokenId, double>>* row = nullptr;
  for (std::size_t k = std::min(prefix.size(), longest_context_) + 1; k-- > 0;) {
    const std::vector<TokenId> key(prefix.end() - static_cast<std::ptrdiff_t>(k), prefix.end());
    auto it = rows_.find(key);
    if (it != rows_.end()) {
      row = &it->second;
      break;
    }
  }

  if (row == nullptr) {
    std::ranges::fill(probs, 1.0 / static_cast<double>(n));
  } else {
    double listed = 0.0;
    for (const auto& [id, p] : *row) {
      probs[static_cast<std::size_t>(id)] = p;
      listed += p;
    }
    const std::size_t unlisted = n - row->size();
    const double rest = 1.0 - listed;
    if (unlisted > 0 && rest > 1e-12) {
      const double share = rest / static_cast<double>(unlisted);
      std::vector<bool> is_listed(n, false);
      for (const auto& [id, p] : *row) is_listed[static_cast<std::size_t>(id)] = true;
      for (std::size_t id = 0; id < n; ++id) {
        if (!is_listed[id]) probs[id] = share;
      }
    } else if (listed > 0.0) {
      for (const auto& [id, p] : *row) probs[static_cast<std::size_t>(id)] = p / listed;
    } else {
      std::ranges::fill(probs, 1.0 / static_cast<double>(n));
    }
  }

  LogitResult result;
  result.prefix.assign(prefix.begin(), prefix.end());
  for (std::size_t id = 0; id < n; ++id) {
    if (probs[id] > 0.0) {
      result.entries.push_back({Token{static_cast<TokenId>(id), vocab_[id]}, std::log(probs[id])});
    }
  }
  std::ranges::sort(result.entries, [](const LogitEntry& a, const LogitEntry& b) {
    if (a.log_prob != b.log_prob) return a.log_prob > b.log_prob;
    return a.token.id < b.token.id;
  });
  return result;
}

MockInstructBackend::MockInstructBackend(std::vector<Rule> rules, std::vector<std::string> fallback)
    : rules_(std::move(rules)), fallback_(std::move(fallback)) {
  for (const Rule& r : rules_) {
    if (r.marker.empty() || r.items.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "canned rules need a marker and at least one item");
    }
    if (r.min_items.has_value() != r.max_items.has_value() ||
        (r.min_items && (*r.min_items < 1 || *r.min_items > *r.max_items))) {
      throw Error(ErrorCode::kInvalidArgument, "rule \"" + r.marker + "\" has a bad item range");
    }
  }
}

MockInstructBackend MockInstructBackend::from_json(const nlohmann::json& fixture) {
  std::vector<Rule> rules;
  for (const auto& r : fixture.value("rules", nlohmann::json::array())) {
    Rule rule;
    rule.marker = r.at("marker").get<std::string>();
    rule.items = r.at("items").get<std::vector<std::string>>();
    if (r.contains("min_items")) rule.min_items = r["min_items"].get<int>();
    if (r.contains("max_items")) rule.max_items = r["max_items"].get<int>();
    rules.push_back(std::move(rule));
  }
  return MockInstructBackend(std::move(rules),
                             fixture.value("fallback_items", std::vector<std::string>{}));
}

MockInstructBackend MockInstructBackend::from_file(const std::filesystem::path& path) {
  return from_json(read_json_file(path));
}

std::vector<std::string> MockInstructBackend::complete(const InstructRequest& request) const {
  request.validate();
  const Rule* rule = nullptr;
  for (const Rule& r : rules_) {
    if (request.system_text.find(r.marker) != std::string::npos ||
        request.user_text.find(r.marker) != std::string::npos) {
      rule = &r;
      break;
    }
  }

  std::vector<std::string> items;
  if (rule == nullptr) {
    if (fallback_.empty()) throw Error(ErrorCode::kMalformedResponse, "no canned response for request");
    items = fallback_;
  } else if (!rule->min_items) {
    items = rule->items;
  } else {
    const std::uint64_t key =
        text::fnv1a(request.system_text + '\x1f' + request.user_text + '\x1f' +
                    std::to_string(request.max_output_items));
    SplitMix64 rng(key ^ request.seed.value_or(0));
    const auto count = static_cast<std::size_t>(rng.uniform(*rule->min_items, *rule->max_items));
    items = rule->items;
    rng.shuffle(items);
    items.resize(std::min(count, items.size()));
  }
  if (items.size() > static_cast<std::size_t>(request.max_output_items)) {
    items.resize(static_cast<std::size_t>(request.max_output_items));
  }
  return items;
}

}  // namespace phraselette
