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
#include "phraselette/paths.hpp"
#include "phraselette/pos_tagger.hpp"

using namespace phraselette;

namespace {

std::vector<PosTag> random_tags(SplitMix64& rng, int max_len, int alphabet) {
  std::vector<PosTag> out(static_cast<std::size_t>(rng.uniform(0, max_len)));
  for (PosTag& t : out) t = kAllPosTags[static_cast<std::size_t>(rng.uniform(0, alphabet - 1))];
  return out;
}

const PosTagger& tagger() {
  static const PosTagger t = PosTagger::load_default();
  return t;
}

}  // namespace

TEST(PosTag, ParseRoundTrip) {
  for (PosTag t : kAllPosTags) EXPECT_EQ(parse_pos_tag(to_string(t)), t);
  EXPECT_EQ(parse_pos_tags("VERB  ADV"), (std::vector<PosTag>{PosTag::VERB, PosTag::ADV}));
  EXPECT_EQ(render_pos_tags({PosTag::VERB, PosTag::ADV}), "VERB ADV");
  EXPECT_THROW(parse_pos_tags("VERB FOO"), Error);
}

TEST(SequenceMatch, AgreesWithBruteForce) {
  SplitMix64 rng(5);
  for (int i = 0; i < 3000; ++i) {
    const auto items = random_tags(rng, 8, 3);
    const auto pattern = random_tags(rng, 4, 3);
    for (MatchMode m : {MatchMode::kExact, MatchMode::kStartsWith, MatchMode::kEndsWith, MatchMode::kContains,
                        MatchMode::kInOrder}) {
      EXPECT_EQ(sequence_matches<PosTag>(items, pattern, m), oracle::brute_match(items, pattern, m))
          << render_pos_tags(items) << " / " << render_pos_tags(pattern) << " / " << to_string(m);
    }
  }
}

TEST(SequenceMatch, ImplicationChain) {
  SplitMix64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const auto items = random_tags(rng, 7, 3);
    const auto pattern = random_tags(rng, 4, 3);
    const bool exact = sequence_matches<PosTag>(items, pattern, MatchMode::kExact);
    const bool starts = sequence_matches<PosTag>(items, pattern, MatchMode::kStartsWith);
    const bool ends = sequence_matches<PosTag>(items, pattern, MatchMode::kEndsWith);
    const bool contains = sequence_matches<PosTag>(items, pattern, MatchMode::kContains);
    const bool in_order = sequence_matches<PosTag>(items, pattern, MatchMode::kInOrder);
    if (exact) {
      EXPECT_TRUE(starts && ends);
    }
    if (starts || ends) {
      EXPECT_TRUE(contains);
    }
    if (contains) {
      EXPECT_TRUE(in_order);
    }
  }
}

TEST(SequenceMatch, EmptyPattern) {
  const std::vector<PosTag> items{PosTag::NOUN};
  const std::vector<PosTag> none;
  EXPECT_FALSE(sequence_matches<PosTag>(items, none, MatchMode::kExact));
  EXPECT_TRUE(sequence_matches<PosTag>(items, none, MatchMode::kContains));
  EXPECT_THROW(tag_sequence_matches(items, none, MatchMode::kContains), Error);
}

TEST(PosTagger, ParsesTaggedLines) {
  const auto s = parse_tagged_line("plasticized/VERB onto/ADP and/or/CONJ");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0], (TaggedWord{"plasticized", PosTag::VERB}));
  EXPECT_EQ(s[2].first, "and/or");
  EXPECT_THROW(parse_tagged_line("word/BOGUS"), Error);
}

TEST(PosTagger, AccuracyOnEvalFixture) {
  const auto eval = read_tagged_corpus(data_dir() / "pos" / "eval.txt");
  EXPECT_EQ(eval.size(), 200u);
  ASSERT_TRUE(tagger().has_model());
  EXPECT_GE(tagger().accuracy(eval), 0.90);
}

TEST(PosTagger, TagsFragments) {
  const auto tags = tagger().tag_phrase("glazed with");
  ASSERT_EQ(tags.size(), 2u);
  EXPECT_EQ(tags[1].second, PosTag::ADP);
  EXPECT_TRUE(tagger().tag_phrase("   ").empty());
}

TEST(PosTagger, ModelRoundTrip) {
  const PosTagger copy = PosTagger::from_json(tagger().to_json());
  for (const char* p : {"so much depends upon", "a red wheel barrow", "glazed with rain water"}) {
    EXPECT_EQ(copy.tag_phrase(p), tagger().tag_phrase(p));
  }
  nlohmann::json bad = tagger().to_json();
  bad["version"] = 99;
  try {
    PosTagger::from_json(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchemaVersionMismatch);
  }
}

TEST(PosTagger, TrainingIsDeterministic) {
  const std::vector<TaggedSentence> corpus = {parse_tagged_line("the/DET rain/NOUN falls/VERB softly/ADV"),
                                              parse_tagged_line("a/DET wheel/NOUN turns/VERB slowly/ADV")};
  TrainOptions opts;
  opts.iterations = 4;
  const PosTagger a = PosTagger::train(corpus, {}, opts);
  const PosTagger b = PosTagger::train(corpus, {}, opts);
  EXPECT_EQ(a.to_json(), b.to_json());
  EXPECT_EQ(a.accuracy(corpus), 1.0);
}
