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

#include <algorithm>
#include <optional>
#include <span>
#include <string_view>

namespace phraselette {

// How a pattern sequence must relate to a candidate sequence.
enum class MatchMode { kExact, kStartsWith, kEndsWith, kContains, kInOrder };

std::string_view to_string(MatchMode mode);
std::optional<MatchMode> parse_match_mode(std::string_view name);

// startsWith/endsWith/contains are contiguous; inOrder is a possibly
// non-contiguous subsequence; exact is full equality. An empty pattern
// matches under every mode except exact against a nonempty sequence.
template <typename T>
bool sequence_matches(std::span<const T> items, std::span<const T> pattern, MatchMode mode) {
  switch (mode) {
    case MatchMode::kExact:
      return std::ranges::equal(items, pattern);
    case MatchMode::kStartsWith:
      return pattern.size() <= items.size() &&
             std::ranges::equal(items.first(pattern.size()), pattern);
    case MatchMode::kEndsWith:
      return pattern.size() <= items.size() &&
             std::ranges::equal(items.last(pattern.size()), pattern);
    case MatchMode::kContains:
      return !std::ranges::search(items, pattern).empty() || pattern.empty();
    case MatchMode::kInOrder: {
      std::size_t next = 0;
      for (const T& item : items) {
        if (next < pattern.size() && item == pattern[next]) ++next;
      }
      return next == pattern.size();
    }
  }
  return false;
}

}  // namespace phraselette
