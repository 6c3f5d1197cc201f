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

#include "phraselette/pos_tag.hpp"

#include "phraselette/error.hpp"
#include "phraselette/text.hpp"

namespace phraselette {

std::string_view to_string(PosTag tag) {
  static constexpr std::array<std::string_view, kPosTagCount> kNames = {
      "NOUN", "VERB", "ADJ", "ADV",  "ADP",  "PRON",  "DET", "AUX", "NUM",
      "CONJ", "SCONJ", "PART", "PROPN", "INTJ", "PUNCT", "SYM", "X",
  };
  return kNames[static_cast<std::size_t>(tag)];
}

std::optional<PosTag> parse_pos_tag(std::string_view name) {
  const std::string upper = text::to_upper_ascii(name);
  for (PosTag t : kAllPosTags) {
    if (to_string(t) == upper) return t;
  }
  if (upper == "CCONJ") return PosTag::CONJ;
  return std::nullopt;
}

std::vector<PosTag> parse_pos_tags(std::string_view s) {
  std::vector<PosTag> out;
  for (std::string_view tok : text::split_words(s)) {
    auto t = parse_pos_tag(tok);
    if (!t) throw Error(ErrorCode::kInvalidArgument, "unknown part-of-speech tag: " + std::string(tok));
    out.push_back(*t);
  }
  return out;
}

std::string render_pos_tags(const std::vector<PosTag>& tags) {
  std::string out;
  for (PosTag t : tags) {
    if (!out.empty()) out += ' ';
    out += to_string(t);
  }
  return out;
}

}  // namespace phraselette
