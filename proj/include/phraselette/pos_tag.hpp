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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace phraselette {

// Coarse universal tagset (CONJ stands for coordinating conjunctions).
enum class PosTag : std::uint8_t {
  NOUN, VERB, ADJ, ADV, ADP, PRON, DET, AUX, NUM, CONJ, SCONJ, PART, PROPN, INTJ, PUNCT, SYM, X,
};

inline constexpr std::size_t kPosTagCount = 17;

inline constexpr std::array<PosTag, kPosTagCount> kAllPosTags = {
    PosTag::NOUN, PosTag::VERB, PosTag::ADJ,   PosTag::ADV,  PosTag::ADP,  PosTag::PRON,
    PosTag::DET,  PosTag::AUX,  PosTag::NUM,   PosTag::CONJ, PosTag::SCONJ, PosTag::PART,
    PosTag::PROPN, PosTag::INTJ, PosTag::PUNCT, PosTag::SYM, PosTag::X,
};

std::string_view to_string(PosTag tag);
std::optional<PosTag> parse_pos_tag(std::string_view name);

// "VERB ADV" -> {VERB, ADV}; throws InvalidArgument on an unknown tag.
std::vector<PosTag> parse_pos_tags(std::string_view text);
std::string render_pos_tags(const std::vector<PosTag>& tags);

}  // namespace phraselette
