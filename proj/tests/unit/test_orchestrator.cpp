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

#include <atomic>

#include "../support/services.hpp"
#include "phraselette/document.hpp"
#include "phraselette/error.hpp"
#include "phraselette/orchestrator.hpp"
#include "phraselette/text.hpp"

using namespace phraselette;
using testing_support::kPoem;

namespace {

// Echoes the selection reversed and upper-cased, plus one fixed phrase.
class EchoWell : public Well {
 public:
  using Well::Well;
  WellOutput run(const InletContext& ctx, const Advice&) const override {
    WellOutput out;
    const std::string s = ctx.slice.selection;
    out.rephrasings.push_back(make_rephrasing(std::string(s.rbegin(), s.rend()), id(), 0.9, ctx.generation));
    out.rephrasings.push_back(make_rephrasing(text::to_upper_ascii(s), id(), 0.5, ctx.generation));
    out.rephrasings.push_back(make_rephrasing("sheened with", id(), 0.1, ctx.generation));
    out.insights.push_back({InsightKind::kTextBullets, id(), {{"bullets", {"echo"}}}});
    return out;
  }
};

class FailingWell : public Well {
 public:
  using Well::Well;
  WellOutput run(const InletContext&, const Advice&) const override {
    throw Error(ErrorCode::kBackendUnavailable, "model host is down");
  }
};

class GateWell : public Well {
 public:
  GateWell(const WellConfig& cfg, std::shared_ptr<std::atomic<bool>> open) : Well(cfg), open_(std::move(open)) {}
  WellOutput run(const InletContext& ctx, const Advice&) const override {
    while (!open_->load()) std::this_thread::sleep_for(std::chrono::milliseconds(1));
    WellOutput out;
    out.rephrasings.push_back(make_rephrasing("late arrival", id(), 1.0, ctx.generation));
    return out;
  }

 private:
  std::shared_ptr<std::atomic<bool>> open_;
};

std::shared_ptr<std::atomic<bool>> g_gate = std::make_shared<std::atomic<bool>>(true);

std::shared_ptr<const WellRegistry> test_registry() {
  auto r = std::make_shared<WellRegistry>(WellRegistry::with_builtin_wells());
  r->add({.kind = "echo",
          .capabilities = {.generates = true, .insights = true},
          .create = [](const WellConfig& c, const WellServices&) -> std::unique_ptr<Well> {
            return std::make_unique<EchoWell>(c);
          }});
  r->add({.kind = "failing",
          .capabilities = {.generates = true},
          .create = [](const WellConfig& c, const WellServices&) -> std::unique_ptr<Well> {
            return std::make_unique<FailingWell>(c);
          }});
  r->add({.kind = "gate",
          .capabilities = {.generates = true},
          .create = [](const WellConfig& c, const WellServices&) -> std::unique_ptr<Well> {
            return std::make_unique<GateWell>(c, g_gate);
          }});
  return r;
}

struct Rig {
  testing_support::MockServices mock = testing_support::mock_services();
  Orchestrator orch{test_registry(), mock.services};
  Document doc{"d", kPoem};
  std::string inlet = doc.create_inlet({42, 53}).id;

  JobRequest request(std::vector<WellConfig> wells, std::vector<Constraint> extra = {}) {
    JobRequest req;
    req.job_id = "job-1";
    req.context = {doc.id(), inlet, doc.begin_run(inlet), doc.slice_context(inlet), 7};
    req.active = wells;
    for (const WellConfig& w : wells) req.run_ids.push_back(w.well_id);
    req.extra_constraints = std::move(extra);
    return req;
  }
};

WellConfig well(const std::string& id, const std::string& kind, nlohmann::json params = nlohmann::json::object(),
                std::optional<std::string> desc = std::nullopt) {
  return {id, kind, std::move(desc), std::move(params)};
}

}  // namespace

TEST(Orchestrator, ColorsAreStable) {
  EXPECT_EQ(well_color("thesaurus-1"), well_color("thesaurus-1"));
  EXPECT_EQ(well_color("x").size(), 7u);
  EXPECT_EQ(well_color("x")[0], '#');
}

TEST(Orchestrator, EchoWellPlugsIn) {
  Rig s;
  auto job = s.orch.start(s.request({well("e", "echo")}));
  ASSERT_TRUE(job->wait(std::chrono::seconds(10)));
  const JobSnapshot snap = job->snapshot();
  EXPECT_TRUE(snap.complete);
  EXPECT_EQ(snap.wells.at("e").state, WellRunState::kDone);
  ASSERT_EQ(snap.rephrasings.size(), 3u);
  EXPECT_EQ(snap.rephrasings[0].text, "htiw dezalg");
  EXPECT_EQ(snap.insights.size(), 1u);
}

TEST(Orchestrator, FailureIsIsolated) {
  Rig s;
  auto job = s.orch.start(s.request({well("e", "echo"), well("f", "failing")}));
  ASSERT_TRUE(job->wait(std::chrono::seconds(10)));
  const JobSnapshot snap = job->snapshot();
  EXPECT_EQ(snap.wells.at("f").state, WellRunState::kFailed);
  EXPECT_EQ(snap.wells.at("f").reason, "BackendUnavailable: model host is down");
  EXPECT_EQ(snap.wells.at("e").state, WellRunState::kDone);
  EXPECT_EQ(snap.rephrasings.size(), 3u);
}

TEST(Orchestrator, StaleWellsDropResults) {
  Rig s;
  g_gate->store(false);
  JobRequest req = s.request({well("g", "gate")});
  std::atomic<std::int64_t> current{req.context.generation};
  req.is_current = [&current](std::int64_t gen) { return gen == current.load(); };
  auto job = s.orch.start(std::move(req));
  current = current + 1;
  g_gate->store(true);
  ASSERT_TRUE(job->wait(std::chrono::seconds(10)));
  const JobSnapshot snap = job->snapshot();
  EXPECT_EQ(snap.wells.at("g").state, WellRunState::kStale);
  EXPECT_TRUE(snap.rephrasings.empty());
}

TEST(Orchestrator, DedupeMergesProvenance) {
  Rig s;
  auto job = s.orch.start(s.request({well("e1", "echo"), well("e2", "echo")}));
  ASSERT_TRUE(job->wait(std::chrono::seconds(10)));
  const JobSnapshot snap = job->snapshot();
  ASSERT_EQ(snap.rephrasings.size(), 3u);
  EXPECT_EQ(snap.rephrasings[0].provenance, (std::vector<std::string>{"e1", "e2"}));
  EXPECT_EQ(snap.rephrasings[0].well_id, "e1");
  EXPECT_EQ(job->raw_pool().size(), 6u);
}

TEST(Orchestrator, CursorReturnsOnlyNewArrivals) {
  Rig s;
  auto job = s.orch.start(s.request({well("e", "echo")}));
  ASSERT_TRUE(job->wait(std::chrono::seconds(10)));
  const JobSnapshot first = job->snapshot(0);
  EXPECT_EQ(first.new_rephrasings.size(), 3u);
  const JobSnapshot second = job->snapshot(first.next_cursor);
  EXPECT_TRUE(second.new_rephrasings.empty());
  EXPECT_EQ(second.next_cursor, first.next_cursor);
}

TEST(Orchestrator, CrossWellRescoring) {
  Rig s;
  auto job = s.orch.start(s.request({well("t", "thesaurus", nlohmann::json::object(), "a poet"),
                                     well("c", "context", {{"max_tokens", 4}, {"band_min", -25.0}, {"band_max", -12.0}})}));
  ASSERT_TRUE(job->wait(std::chrono::seconds(20)));
  const JobSnapshot snap = job->snapshot();
  ASSERT_EQ(snap.constraints.size(), 1u);
  int thesaurus = 0;
  for (const Rephrasing& r : snap.rephrasings) {
    ASSERT_TRUE(r.total_log_prob) << r.text;
    const bool inside = *r.total_log_prob >= -25.0 && *r.total_log_prob <= -12.0;
    EXPECT_EQ(r.constraint_scores.at("c.band"), inside ? 1.0 : 0.0) << r.text;
    if (r.well_id == "t") ++thesaurus;
  }
  EXPECT_EQ(thesaurus, 12);
  for (std::size_t i = 1; i < snap.rephrasings.size(); ++i) {
    EXPECT_GE(snap.rephrasings[i - 1].overall_score, snap.rephrasings[i].overall_score);
  }
}

TEST(Orchestrator, ExtendRescoresExistingPool) {
  Rig s;
  const std::vector<WellConfig> first = {well("e", "echo")};
  auto job = s.orch.start(s.request(first));
  ASSERT_TRUE(job->wait(std::chrono::seconds(10)));
  for (const Rephrasing& r : job->snapshot().rephrasings) EXPECT_TRUE(r.constraint_scores.empty());

  std::vector<WellConfig> active = first;
  active.push_back(well("w", "words", {{"words", {2, 2}}}));
  s.orch.extend(*job, active, {"w"}, {});
  ASSERT_TRUE(job->wait(std::chrono::seconds(10)));
  const JobSnapshot snap = job->snapshot();
  for (const Rephrasing& r : snap.rephrasings) {
    EXPECT_EQ(r.constraint_scores.size(), 1u) << r.text;
    ASSERT_FALSE(r.tokens.empty());
    EXPECT_TRUE(r.tokens[0].pos) << r.text;
  }
  EXPECT_EQ(snap.rephrasings.front().overall_score, 1.0);
}

TEST(Orchestrator, StartValidates) {
  Rig s;
  JobRequest empty = s.request({});
  EXPECT_THROW(s.orch.start(empty), Error);
  JobRequest unknown = s.request({well("e", "echo")});
  unknown.run_ids = {"nope"};
  try {
    s.orch.start(unknown);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownWell);
  }
}

TEST(Orchestrator, DeterministicPools) {
  auto run_once = [] {
    Rig s;
    auto job = s.orch.start(s.request({well("t", "thesaurus", nlohmann::json::object(), "a poet"),
                                       well("r", "reader", nlohmann::json::object(), "a critic"),
                                       well("c", "context", {{"max_tokens", 4}}), well("snd", "sound"),
                                       well("w", "words", {{"pos", "VERB ADP"}})}));
    EXPECT_TRUE(job->wait(std::chrono::seconds(20)));
    JobSnapshot snap = job->snapshot();
    return std::make_pair(snap.rephrasings, snap.insights);
  };
  const auto a = run_once();
  for (int i = 0; i < 3; ++i) EXPECT_EQ(run_once(), a);
  EXPECT_GT(a.first.size(), 50u);
}

TEST(Orchestrator, SortAndDedupeOrder) {
  auto r = [](const char* t, const char* w, double overall, double internal) {
    Rephrasing x = make_rephrasing(t, w, internal, 0);
    x.overall_score = overall;
    return x;
  };
  const auto out = sort_and_dedupe({r("b", "w2", 0.5, 0.1), r("a", "w1", 0.5, 0.1), r("c", "w1", 0.9, 0.0),
                                    r("b", "w1", 0.7, 0.0), r("d", "w3", 0.5, 0.3)});
  ASSERT_EQ(out.size(), 4u);
  EXPECT_EQ(out[0].text, "c");
  EXPECT_EQ(out[1].text, "b");
  EXPECT_EQ(out[1].well_id, "w1");
  EXPECT_EQ(out[1].provenance, (std::vector<std::string>{"w1", "w2"}));
  EXPECT_EQ(out[2].text, "d");
  EXPECT_EQ(out[3].text, "a");
}
