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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace phraselette {

// The 39 ARPAbet phonemes used by CMU-format lexicons.
enum class Arpabet : std::uint8_t {
  AA, AE, AH, AO, AW, AY, B, CH, D, DH, EH, ER, EY, F, G, HH, IH, IY, JH, K,
  L, M, N, NG, OW, OY, P, R, S, SH, T, TH, UH, UW, V, W, Y, Z, ZH,
};

inline constexpr std::size_t kArpabetCount = 39;

std::string_view to_string(Arpabet symbol);
std::optional<Arpabet> parse_arpabet(std::string_view name);
bool is_vowel(Arpabet symbol);

// A phoneme with optional lexical stress. Stress is only ever attached to
// vowels; manually entered vowels may leave it unset.
struct Phoneme {
  Arpabet symbol = Arpabet::AH;
  std::optional<std::uint8_t> stress;

  bool is_vowel() const { return phraselette::is_vowel(symbol); }
  std::string to_string(bool with_stress = true) const;

  friend bool operator==(const Phoneme&, const Phoneme&) = default;
};

// Parses "AE1", "K", "ah0". Returns nullopt for anything else, including
// stress digits on consonants or digits outside 0..2.
std::optional<Phoneme> parse_phoneme(std::string_view token);

// Parses a whitespace-separated phoneme list; throws InvalidArgument on a bad
// symbol.
std::vector<Phoneme> parse_phonemes(std::string_view text);

// "K AE P T IH V" style rendering.
std::string render_phonemes(std::span<const Phoneme> phonemes, bool with_stress = false);

}  // namespace phraselette
