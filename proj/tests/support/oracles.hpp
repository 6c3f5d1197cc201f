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

// Reference implementations used by the unit and acceptance suites. They are
// written from the definitions, without sharing code with the library.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "phraselette/beam_search.hpp"
#include "phraselette/mock_backend.hpp"
#include "phraselette/phoneme.hpp"
#include "phraselette/rng.hpp"
#include "phraselette/sequence_match.hpp"

namespace oracle {

using phraselette::SplitMix64;

// Random transition-table fixture. Surfaces mix space-initial words with
// suffix pieces so some prefixes cannot end a word.
inline nlohmann::json random_logit_fixture(SplitMix64& rng, int vocab_size) {
  static const char* kWords[] = {" a", " red", " rain", " glass", " slick", " cold", " stone", " light",
                                 " over", " wet"};
  static const char* kPieces[] = {"ing", "ed", "s", "er", "ly"};
  nlohmann::json vocab = nlohmann::json::array();
  std::set<std::string> used;
  const int min_words = std::max(2, vocab_size - 5);
  const int words = static_cast<int>(rng.uniform(min_words, std::max(min_words, vocab_size - 1)));
  while (static_cast<int>(vocab.size()) < vocab_size) {
    const bool word = static_cast<int>(vocab.size()) < words;
    std::string s = word ? kWords[rng.uniform(0, 9)] : kPieces[rng.uniform(0, 4)];
    if (!used.insert(s).second) continue;
    vocab.push_back(s);
  }
  nlohmann::json transitions = nlohmann::json::object();
  auto random_row = [&] {
    nlohmann::json row = nlohmann::json::object();
    double mass = 0.0;
    std::vector<double> w(vocab.size());
    for (double& x : w) {
      x = rng.unit() < 0.3 ? 0.0 : 0.05 + rng.unit();
      mass += x;
    }
    if (mass == 0.0) {
      w[0] = 1.0;
      mass = 1.0;
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
      row[std::to_string(i)] = w[i] / mass;
    }
    return row;
  };
  transitions[""] = random_row();
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    if (rng.unit() < 0.7) transitions[std::to_string(i)] = random_row();
  }
  for (int k = 0; k < 4; ++k) {
    const auto a = rng.uniform(0, vocab_size - 1);
    const auto b = rng.uniform(0, vocab_size - 1);
    transitions[std::to_string(a) + "," + std::to_string(b)] = random_row();
  }
  return {{"vocab", vocab}, {"transitions", transitions}};
}

struct Ranked {
  std::vector<phraselette::TokenId> ids;
  std::string text;
  double log_prob = 0.0;
};

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\n\r\f\v");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\n\r\f\v");
  return s.substr(b, e - b + 1);
}

inline int count_words(const std::string& s) {
  std::istringstream in(s);
  std::string w;
  int n = 0;
  while (in >> w) ++n;
  return n;
}

// Enumerates every token sequence of length 1..max_tokens, keeps those whose
// own next distribution offers a space-initial token and whose word count is
// in range, ranks by (log-prob desc, ids asc), dedupes by trimmed text, then
// applies the band and the cap.
inline std::vector<Ranked> exhaustive_top(const std::string& before, const phraselette::BeamParams& p,
                                          const phraselette::LogitBackend& backend) {
  std::vector<phraselette::TokenId> context;
  for (const auto& t : backend.tokenize(before)) context.push_back(t.id);
  std::vector<Ranked> all;
  struct Frame {
    std::vector<phraselette::TokenId> ids;
    std::string surface;
    double lp;
  };
  std::vector<Frame> stack{{{}, "", 0.0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    std::vector<phraselette::TokenId> prefix = context;
    prefix.insert(prefix.end(), f.ids.begin(), f.ids.end());
    const auto dist = backend.next_distribution(prefix);
    if (!f.ids.empty()) {
      const int words = count_words(f.surface);
      bool boundary = false;
      for (const auto& e : dist.entries) {
        if (!e.token.surface.empty() && std::isspace(static_cast<unsigned char>(e.token.surface[0]))) {
          boundary = true;
        }
      }
      if (boundary && words >= p.min_words && (!p.max_words || words <= *p.max_words)) {
        all.push_back({f.ids, trim(f.surface), f.lp});
      }
    }
    if (static_cast<int>(f.ids.size()) == p.max_tokens) continue;
    for (const auto& e : dist.entries) {
      Frame g = f;
      g.ids.push_back(e.token.id);
      g.surface += e.token.surface;
      g.lp += e.log_prob;
      stack.push_back(std::move(g));
    }
  }
  std::sort(all.begin(), all.end(), [](const Ranked& a, const Ranked& b) {
    if (a.log_prob != b.log_prob) return a.log_prob > b.log_prob;
    return a.ids < b.ids;
  });
  std::vector<Ranked> out;
  std::set<std::string> seen;
  for (const Ranked& r : all) {
    if (!seen.insert(r.text).second) continue;
    if (p.band && (r.log_prob < p.band->min || r.log_prob > p.band->max)) continue;
    if (static_cast<int>(out.size()) >= p.result_cap) break;
    out.push_back(r);
  }
  return out;
}

// Match definitions by enumeration over index sets.
template <typename T>
bool brute_match(const std::vector<T>& items, const std::vector<T>& pattern, phraselette::MatchMode mode) {
  using phraselette::MatchMode;
  const std::size_t n = items.size();
  const std::size_t m = pattern.size();
  auto slice_equals = [&](std::size_t at) {
    if (at + m > n) return false;
    for (std::size_t i = 0; i < m; ++i) {
      if (!(items[at + i] == pattern[i])) return false;
    }
    return true;
  };
  switch (mode) {
    case MatchMode::kExact:
      return n == m && slice_equals(0);
    case MatchMode::kStartsWith:
      return slice_equals(0);
    case MatchMode::kEndsWith:
      return m <= n && slice_equals(n - m);
    case MatchMode::kContains:
      for (std::size_t at = 0; at + m <= n; ++at) {
        if (slice_equals(at)) return true;
      }
      return false;
    case MatchMode::kInOrder:
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != m) continue;
        std::size_t k = 0;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
          if (mask & (1u << i)) ok = items[i] == pattern[k++];
        }
        if (ok) return true;
      }
      return false;
  }
  return false;
}

// Stress-free symbols of the rhyme part: from the last vowel carrying
// primary stress, else secondary stress, else the last vowel, else all.
inline std::vector<std::string> rhyme_part(const std::vector<phraselette::Phoneme>& ph) {
  int at = -1;
  for (int want : {1, 2, -1}) {
    for (int i = static_cast<int>(ph.size()) - 1; i >= 0; --i) {
      const bool vowel = ph[static_cast<std::size_t>(i)].is_vowel();
      const auto stress = ph[static_cast<std::size_t>(i)].stress;
      if (vowel && (want == -1 || (stress && *stress == want))) {
        at = i;
        break;
      }
    }
    if (at >= 0) break;
  }
  if (at < 0) at = 0;
  std::vector<std::string> out;
  for (std::size_t i = static_cast<std::size_t>(at); i < ph.size(); ++i) out.push_back(ph[i].to_string(false));
  return out;
}

inline bool rhymes(const std::vector<phraselette::Phoneme>& phrase, const std::vector<phraselette::Phoneme>& ref) {
  const auto suffix = rhyme_part(ref);
  if (suffix.size() > phrase.size()) return false;
  for (std::size_t i = 0; i < suffix.size(); ++i) {
    if (phrase[phrase.size() - suffix.size() + i].to_string(false) != suffix[i]) return false;
  }
  return true;
}

inline std::vector<std::vector<std::string>> read_word_groups(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::vector<std::vector<std::string>> groups;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<std::string> g;
    std::string w;
    while (ls >> w) g.push_back(w);
    if (!g.empty()) groups.push_back(g);
  }
  return groups;
}

// 100 deterministic (phrase word, reference word) pairs, half within a group
// and half across groups.
inline std::vector<std::pair<std::string, std::string>> rhyme_pairs(
    const std::vector<std::vector<std::string>>& groups) {
  SplitMix64 rng(2024);
  std::vector<std::pair<std::string, std::string>> pairs;
  while (pairs.size() < 100) {
    const auto& g = groups[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(groups.size()) - 1))];
    const std::string a = g[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(g.size()) - 1))];
    std::string b;
    if (pairs.size() % 2 == 0) {
      b = g[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(g.size()) - 1))];
    } else {
      const auto& h = groups[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(groups.size()) - 1))];
      b = h[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(h.size()) - 1))];
    }
    pairs.emplace_back(a, b);
  }
  return pairs;
}

}  // namespace oracle
