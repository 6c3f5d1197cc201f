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

#include "phraselette/phoneme.hpp"

#include <array>

#include "phraselette/error.hpp"
#include "phraselette/text.hpp"

namespace phraselette {

namespace {

constexpr std::array<std::string_view, kArpabetCount> kNames = {
    "AA", "AE", "AH", "AO", "AW", "AY", "B",  "CH", "D",  "DH", "EH", "ER", "EY",
    "F",  "G",  "HH", "IH", "IY", "JH", "K",  "L",  "M",  "N",  "NG", "OW", "OY",
    "P",  "R",  "S",  "SH", "T",  "TH", "UH", "UW", "V",  "W",  "Y",  "Z",  "ZH",
};

}  // namespace

std::string_view to_string(Arpabet symbol) { return kNames[static_cast<std::size_t>(symbol)]; }

std::optional<Arpabet> parse_arpabet(std::string_view name) {
  const std::string upper = text::to_upper_ascii(name);
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == upper) return static_cast<Arpabet>(i);
  }
  return std::nullopt;
}

bool is_vowel(Arpabet symbol) {
  switch (symbol) {
    case Arpabet::AA: case Arpabet::AE: case Arpabet::AH: case Arpabet::AO: case Arpabet::AW:
    case Arpabet::AY: case Arpabet::EH: case Arpabet::ER: case Arpabet::EY: case Arpabet::IH:
    case Arpabet::IY: case Arpabet::OW: case Arpabet::OY: case Arpabet::UH: case Arpabet::UW:
      return true;
    default:
      return false;
  }
}

std::string Phoneme::to_string(bool with_stress) const {
  std::string out(phraselette::to_string(symbol));
  if (with_stress && stress) out += static_cast<char>('0' + *stress);
  return out;
}

std::optional<Phoneme> parse_phoneme(std::string_view token) {
  if (token.empty()) return std::nullopt;
  std::optional<std::uint8_t> stress;
  const char last = token.back();
  if (last >= '0' && last <= '9') {
    if (last > '2') return std::nullopt;
    stress = static_cast<std::uint8_t>(last - '0');
    token.remove_suffix(1);
  }
  auto symbol = parse_arpabet(token);
  if (!symbol) return std::nullopt;
  if (stress && !is_vowel(*symbol)) return std::nullopt;
  return Phoneme{*symbol, stress};
}

std::vector<Phoneme> parse_phonemes(std::string_view s) {
  std::vector<Phoneme> out;
  for (std::string_view tok : text::split_words(s)) {
    auto p = parse_phoneme(tok);
    if (!p) throw Error(ErrorCode::kInvalidArgument, "not an ARPAbet phoneme: " + std::string(tok));
    out.push_back(*p);
  }
  return out;
}

std::string render_phonemes(std::span<const Phoneme> phonemes, bool with_stress) {
  std::string out;
  for (const Phoneme& p : phonemes) {
    if (!out.empty()) out += ' ';
    out += p.to_string(with_stress);
  }
  return out;
}

}  // namespace phraselette
