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

#include "phraselette/document.hpp"
#include "phraselette/error.hpp"
#include "phraselette/rephrasing.hpp"
#include "phraselette/rng.hpp"
#include "phraselette/text.hpp"

using namespace phraselette;

namespace {

const char* kPoem = "so much depends\nupon\n\na red wheel\nbarrow\n\nglazed with rain\nwater\n";

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIoError;
}

void expect_invariants(const Document& doc) {
  for (std::size_t i = 0; i < doc.inlets().size(); ++i) {
    const CharRange& r = doc.inlets()[i].range;
    EXPECT_LT(r.start, r.end);
    EXPECT_LE(r.end, doc.length());
    if (i > 0) {
      EXPECT_LE(doc.inlets()[i - 1].range.end, r.start);
    }
  }
  EXPECT_EQ(doc.length(), text::codepoint_length(doc.text()));
}

}  // namespace

TEST(Text, CodepointOffsets) {
  EXPECT_EQ(text::codepoint_length("mien"), 4u);
  EXPECT_EQ(text::codepoint_length("υαλωμένο"), 8u);
  EXPECT_EQ(text::byte_offset("aé b", 2), 3u);
  EXPECT_EQ(text::byte_offset("aé b", 4), 5u);
  EXPECT_THROW(text::codepoint_length("\xff"), Error);
}

TEST(Text, RunsConcatenateToInput) {
  const std::string s = "  glazed \t with\nrain ";
  std::string joined;
  for (auto run : text::split_runs(s)) joined += run;
  EXPECT_EQ(joined, s);
  EXPECT_EQ(text::word_count(s), 3u);
  EXPECT_EQ(text::trim(s), "glazed \t with\nrain");
}

TEST(Text, Fnv1aKnownValues) {
  EXPECT_EQ(text::fnv1a(""), 14695981039346656037ull);
  EXPECT_EQ(text::fnv1a("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(text::hex(0xabc, 6), "000abc");
}

TEST(Document, SelectionAndContext) {
  Document doc("d", kPoem);
  const Inlet& in = doc.create_inlet({42, 53});
  EXPECT_EQ(doc.selection(in.id), "glazed with");
  const ContextSlice s = doc.slice_context(in.id);
  EXPECT_EQ(s.before + s.selection + s.after, kPoem);
  EXPECT_EQ(s.selection, "glazed with");
}

TEST(Document, RejectsBadRanges) {
  Document doc("d", kPoem);
  doc.create_inlet({42, 53});
  EXPECT_EQ(code_of([&] { doc.create_inlet({10, 10}); }), ErrorCode::kEmptyRange);
  EXPECT_EQ(code_of([&] { doc.create_inlet({60, 500}); }), ErrorCode::kOutOfBounds);
  EXPECT_EQ(code_of([&] { doc.create_inlet({50, 58}); }), ErrorCode::kOverlappingInlet);
  EXPECT_EQ(code_of([&] { doc.remove_inlet("nope"); }), ErrorCode::kUnknownInlet);
}

TEST(Document, UnicodeOffsetsAreCodepoints) {
  Document doc("d", "ένα υαλωμένο κάρο");
  const Inlet& in = doc.create_inlet({4, 12});
  EXPECT_EQ(doc.selection(in.id), "υαλωμένο");
}

TEST(Document, AcceptReplacesSpanAndShiftsLaterInlets) {
  Document doc("d", kPoem);
  const std::string a = doc.create_inlet({0, 7}).id;
  const std::string b = doc.create_inlet({42, 53}).id;
  const std::int64_t gen = doc.begin_run(a);
  doc.accept_rephrasing(a, make_rephrasing("everything rests", "w", 0, gen));
  EXPECT_EQ(doc.selection(a), "everything rests");
  EXPECT_EQ(doc.selection(b), "glazed with");
  EXPECT_GT(doc.inlet(a).generation, gen);
  expect_invariants(doc);
}

TEST(Document, StaleRephrasingIsRejected) {
  Document doc("d", kPoem);
  const std::string a = doc.create_inlet({42, 53}).id;
  const std::int64_t old_gen = doc.begin_run(a);
  doc.begin_run(a);
  const std::string before = doc.text();
  EXPECT_EQ(code_of([&] { doc.accept_rephrasing(a, make_rephrasing("sheened with", "w", 0, old_gen)); }),
            ErrorCode::kStaleGeneration);
  EXPECT_EQ(doc.text(), before);
}

TEST(Document, RevisionBumpsOnEveryMutation) {
  Document doc("d", kPoem);
  std::int64_t rev = doc.revision();
  auto bumped = [&] {
    EXPECT_GT(doc.revision(), rev);
    rev = doc.revision();
  };
  const std::string id = doc.create_inlet({0, 2}).id;
  bumped();
  doc.begin_run(id);
  bumped();
  doc.activate_well("w1");
  bumped();
  doc.remove_inlet(id);
  bumped();
}

TEST(Document, RestoreValidates) {
  Inlet a{"d-i1", {0, 5}, {}, 0};
  Inlet b{"d-i2", {3, 8}, {}, 0};
  EXPECT_THROW(Document::restore("d", kPoem, {a, b}, 1, 3), Error);
  Document ok = Document::restore("d", kPoem, {a}, 4, 2);
  EXPECT_EQ(ok.selection("d-i1"), "so mu");
}

// Random create/accept/remove sequences keep the inlet invariants.
TEST(DocumentProperty, InvariantsSurviveRandomEdits) {
  SplitMix64 rng(99);
  const std::vector<std::string> words = {"a", "glazed", "rain water", "υαλωμένο", "x y z", "\n"};
  for (int trial = 0; trial < 200; ++trial) {
    Document doc("d", kPoem);
    for (int step = 0; step < 25; ++step) {
      const auto len = static_cast<std::int64_t>(doc.length());
      const int op = static_cast<int>(rng.uniform(0, 2));
      try {
        if (op == 0 || doc.inlets().empty()) {
          const auto s = static_cast<std::size_t>(rng.uniform(0, len));
          const auto e = static_cast<std::size_t>(rng.uniform(0, len + 2));
          doc.create_inlet({s, e});
        } else {
          const Inlet& in = doc.inlets()[static_cast<std::size_t>(
              rng.uniform(0, static_cast<std::int64_t>(doc.inlets().size()) - 1))];
          const std::string id = in.id;
          if (op == 1) {
            const auto gen = doc.begin_run(id);
            doc.accept_rephrasing(id, make_rephrasing(words[static_cast<std::size_t>(rng.uniform(0, 5)) % 5], "w",
                                                      0, gen));
            EXPECT_EQ(doc.selection(id), text::trim(doc.selection(id)));
          } else {
            doc.remove_inlet(id);
          }
        }
      } catch (const Error& e) {
        EXPECT_TRUE(e.code() == ErrorCode::kEmptyRange || e.code() == ErrorCode::kOutOfBounds ||
                    e.code() == ErrorCode::kOverlappingInlet)
            << e.what();
      }
      expect_invariants(doc);
    }
  }
}

TEST(Rephrasing, ViewTokensAlternate) {
  const Rephrasing r = make_rephrasing("  sheened  with ", "w", 0.5, 3);
  EXPECT_EQ(r.text, "sheened  with");
  ASSERT_EQ(r.tokens.size(), 3u);
  EXPECT_TRUE(r.tokens[0].is_word());
  EXPECT_FALSE(r.tokens[1].is_word());
  EXPECT_EQ(r.provenance, std::vector<std::string>{"w"});
  EXPECT_EQ(r.id(), "r" + text::hex(text::fnv1a("sheened  with"), 12));
  EXPECT_THROW(make_rephrasing("   ", "w", 0, 0), Error);
}
