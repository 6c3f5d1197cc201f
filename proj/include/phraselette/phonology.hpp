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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "phraselette/phoneme.hpp"

namespace phraselette {

enum class PronunciationSource { kLexicon, kG2p };

std::string_view to_string(PronunciationSource source);

struct Pronunciation {
  std::string word;
  std::vector<Phoneme> phonemes;
  PronunciationSource source = PronunciationSource::kLexicon;

  friend bool operator==(const Pronunciation&, const Pronunciation&) = default;
};

enum class SoundMode { kStartsWith, kEndsWith, kContains, kRhymesWith };

std::string_view to_string(SoundMode mode);
std::optional<SoundMode> parse_sound_mode(std::string_view name);

struct SoundRef {
  std::vector<Phoneme> phonemes;
  SoundMode mode = SoundMode::kStartsWith;

  friend bool operator==(const SoundRef&, const SoundRef&) = default;
};

// Number of vowel phonemes.
int syllable_count(std::span<const Phoneme> phonemes);
inline int syllable_count(const Pronunciation& p) { return syllable_count(p.phonemes); }

// The part of `reference` a rhyme must reproduce: from its last primary
// stressed vowel to the end. Falls back to the last secondary stressed vowel,
// then the last vowel, then the whole sequence.
std::vector<Phoneme> rhyme_suffix(std::span<const Phoneme> reference);

// Stress-insensitive comparison of a phoneme string against a reference.
bool phonemes_match(std::span<const Phoneme> phrase, const SoundRef& ref);

// CMU Pronouncing Dictionary format: "WORD  PH PH ...", variants as
// "WORD(1)", ";;;" and "#" comments. Keys are case-insensitive.
class Lexicon {
 public:
  static Lexicon parse(std::string_view content);
  static Lexicon from_file(const std::filesystem::path& path);

  // All variants in file order, or nullptr.
  const std::vector<std::vector<Phoneme>>* lookup(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, std::vector<std::vector<Phoneme>>> entries_;
};

// Deterministic letter-to-sound rules for words missing from the lexicon.
// Only ASCII letters are read; the result always holds at least one vowel,
// stressed 1 on the first vowel and 0 elsewhere. Throws Unpronounceable when
// the word has no letters.
std::vector<Phoneme> g2p(std::string_view word);

// Lexicon lookup with G2P fallback, plus phrase-level helpers.
class Phonology {
 public:
  explicit Phonology(std::shared_ptr<const Lexicon> lexicon);

  // Loads data/lexicon/cmudict-subset.dict from the data directory.
  static Phonology load_default();

  // First lexicon variant if present, else G2P. Throws Unpronounceable.
  Pronunciation pronounce(std::string_view word) const;

  // Lexicon variants after the first.
  std::vector<std::vector<Phoneme>> alternates(std::string_view word) const;

  // One pronunciation per letter-bearing piece of the phrase; pieces are
  // split at whitespace and at characters other than letters and
  // apostrophes. Throws Unpronounceable when no piece has letters.
  std::vector<Pronunciation> pronounce_phrase(std::string_view phrase) const;

  // Concatenated phonemes of pronounce_phrase.
  std::vector<Phoneme> phrase_phonemes(std::string_view phrase) const;

  int syllables(std::string_view phrase) const;

  // 1.0 when the phrase matches the reference, else 0.0.
  double match_sound(std::string_view phrase, const SoundRef& ref) const;

 private:
  std::shared_ptr<const Lexicon> lexicon_;
};

// Lower-cased letter/apostrophe pieces of a word ("Wheel-barrow," ->
// {"wheel", "barrow"}).
std::vector<std::string> word_pieces(std::string_view text);

}  // namespace phraselette
