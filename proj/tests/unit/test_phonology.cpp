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

#include <gtest/gtest.h>

#include "../support/oracles.hpp"
#include "phraselette/error.hpp"
#include "phraselette/phonology.hpp"

using namespace phraselette;

namespace {

const Phonology& phonology() {
  static const Phonology p = Phonology::load_default();
  return p;
}

}  // namespace

TEST(Phoneme, ParseAndRender) {
  auto p = parse_phoneme("ae1");
  ASSERT_TRUE(p);
  EXPECT_EQ(p->symbol, Arpabet::AE);
  EXPECT_EQ(p->stress, 1);
  EXPECT_FALSE(parse_phoneme("K1"));
  EXPECT_FALSE(parse_phoneme("AE3"));
  EXPECT_FALSE(parse_phoneme("QQ"));
  EXPECT_EQ(render_phonemes(parse_phonemes("K AE1 P")), "K AE P");
  EXPECT_EQ(render_phonemes(parse_phonemes("K AE1 P"), true), "K AE1 P");
  EXPECT_THROW(parse_phonemes("K XX"), Error);
}

TEST(Phonology, CaptivatingMien) {
  EXPECT_EQ(render_phonemes(phonology().phrase_phonemes("captivating mien")), "K AE P T IH V EY T IH NG M IY N");
  EXPECT_EQ(phonology().syllables("captivating mien"), 5);
}

TEST(Phonology, StartsWithReference) {
  const SoundRef ref{parse_phonemes("K AE P"), SoundMode::kStartsWith};
  EXPECT_EQ(phonology().match_sound("captivating mien", ref), 1.0);
  EXPECT_EQ(phonology().match_sound("captivating", ref), 1.0);
  EXPECT_EQ(phonology().match_sound("mien captivating", ref), 0.0);
  const SoundRef contains{parse_phonemes("M IY N"), SoundMode::kContains};
  EXPECT_EQ(phonology().match_sound("captivating mien", contains), 1.0);
}

TEST(Phonology, LexiconParsing) {
  const Lexicon lex = Lexicon::parse(";;; comment\nRED  R EH1 D\nREAD  R IY1 D\nREAD(1)  R EH1 D # past\n");
  EXPECT_EQ(lex.size(), 2u);
  ASSERT_NE(lex.lookup("read"), nullptr);
  EXPECT_EQ(lex.lookup("Read")->size(), 2u);
  EXPECT_EQ(lex.lookup("blue"), nullptr);
}

TEST(Phonology, G2pFallback) {
  const auto ph = g2p("zorblat");
  EXPECT_GE(syllable_count(ph), 1);
  ASSERT_FALSE(ph.empty());
  int primary = 0;
  for (const Phoneme& p : ph) {
    if (p.is_vowel() && p.stress == 1) ++primary;
  }
  EXPECT_EQ(primary, 1);
  EXPECT_THROW(g2p("123"), Error);
  EXPECT_EQ(phonology().pronounce("zorblat").source, PronunciationSource::kG2p);
  EXPECT_EQ(phonology().pronounce("rain").source, PronunciationSource::kLexicon);
  try {
    phonology().phrase_phonemes("~ 42 ~");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnpronounceable);
  }
}

TEST(Phonology, WordPieces) {
  EXPECT_EQ(word_pieces("Wheel-barrow,"), (std::vector<std::string>{"wheel", "barrow"}));
  EXPECT_EQ(word_pieces("don't"), (std::vector<std::string>{"don't"}));
}

TEST(Phonology, RhymeSuffix) {
  EXPECT_EQ(render_phonemes(rhyme_suffix(parse_phonemes("K AE1 P T IH0 V EY2 T IH0 NG"))), "AE P T IH V EY T IH NG");
  EXPECT_EQ(render_phonemes(rhyme_suffix(parse_phonemes("AH0 W EY1"))), "EY");
  EXPECT_EQ(render_phonemes(rhyme_suffix(parse_phonemes("B AH0 N AE2 N AH0"))), "AE N AH");
  EXPECT_EQ(render_phonemes(rhyme_suffix(parse_phonemes("S T R"))), "S T R");
}

TEST(PhonologyOracle, RhymeAgreesOnFixturePairs) {
  const auto groups = oracle::read_word_groups(PHRASELETTE_TEST_FIXTURES "/rhyme_words.txt");
  const auto pairs = oracle::rhyme_pairs(groups);
  ASSERT_EQ(pairs.size(), 100u);
  int rhyming = 0;
  for (const auto& [word, ref] : pairs) {
    const auto ref_ph = phonology().pronounce(ref).phonemes;
    const bool expected = oracle::rhymes(phonology().phrase_phonemes(word), ref_ph);
    rhyming += expected;
    EXPECT_EQ(phonology().match_sound(word, {ref_ph, SoundMode::kRhymesWith}) == 1.0, expected)
        << word << " vs " << ref;
  }
  EXPECT_GT(rhyming, 20);
  EXPECT_LT(rhyming, 100);
}

TEST(Phonology, SyllableCountsMatchVowels) {
  for (const char* w : {"water", "chickens", "depends", "upon", "glazed", "captivating"}) {
    const auto ph = phonology().pronounce(w).phonemes;
    int vowels = 0;
    for (const Phoneme& p : ph) vowels += p.is_vowel();
    EXPECT_EQ(syllable_count(ph), vowels) << w;
  }
  EXPECT_EQ(phonology().syllables("water"), 2);
  EXPECT_EQ(phonology().syllables("red wheel barrow"), 4);
}
