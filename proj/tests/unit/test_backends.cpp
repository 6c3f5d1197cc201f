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
#include <cmath>
#include <thread>

#include "httplib.h"
#include "phraselette/error.hpp"
#include "phraselette/mock_backend.hpp"
#include "phraselette/paths.hpp"
#include "phraselette/remote_backend.hpp"

using namespace phraselette;
using nlohmann::json;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIoError;
}

MockLogitBackend small_mock() {
  return MockLogitBackend::from_json(json::parse(R"({
    "vocab": [" glazed", " with", " rain", "ed"],
    "transitions": {"": {"0": 0.5, "1": 0.25},
                    "0,1": {"2": 1.0}},
    "max_context": 6})"));
}

// Local HTTP server standing in for a model host.
class FakeModelServer {
 public:
  FakeModelServer() {
    server_.Post("/v1/tokenize", [](const httplib::Request& req, httplib::Response& res) {
      const json body = json::parse(req.body);
      json tokens = json::array();
      std::string text = body.at("text");
      std::size_t i = 0;
      int id = 0;
      while (i < text.size()) {
        std::size_t j = text.find(' ', i + 1);
        if (j == std::string::npos) j = text.size();
        tokens.push_back({{"id", id++}, {"surface", text.substr(i, j - i)}});
        i = j;
      }
      res.set_content(json{{"tokens", tokens}}.dump(), "application/json");
    });
    server_.Post("/v1/logits", [this](const httplib::Request& req, httplib::Response& res) {
      ++logit_calls;
      if (req.get_header_value("Authorization") != "Bearer k3y") {
        res.status = 401;
        return;
      }
      const json body = json::parse(req.body);
      if (body.at("prefix_tokens").size() > 3) {
        res.status = 413;
        return;
      }
      if (flaky && logit_calls % 2 == 1) {
        res.status = 503;
        return;
      }
      if (garbage) {
        res.set_content("not json", "text/plain");
        return;
      }
      json entries = json::array({{{"token", 7}, {"surface", " rain"}, {"logprob", -0.5}},
                                  {{"token", 3}, {"surface", "ing"}, {"logprob", -1.5}}});
      res.set_content(json{{"entries", entries}}.dump(), "application/json");
    });
    server_.Post("/v1/complete", [this](const httplib::Request& req, httplib::Response& res) {
      last_complete = json::parse(req.body);
      res.set_content(json{{"items", {"1. sheened with", "- slick with\n\n\"washed in\"", "  "}}}.dump(),
                      "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeModelServer() {
    server_.stop();
    thread_.join();
  }

  RemoteOptions options() const {
    RemoteOptions o;
    o.base_url = "http://127.0.0.1:" + std::to_string(port_);
    o.api_key = "k3y";
    o.backoff = std::chrono::milliseconds(1);
    return o;
  }

  std::atomic<int> logit_calls{0};
  std::atomic<bool> flaky{false};
  std::atomic<bool> garbage{false};
  json last_complete;

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace

TEST(MockLogit, GreedyTokenization) {
  const auto m = small_mock();
  const auto toks = m.tokenize(" glazed with rain?");
  ASSERT_EQ(toks.size(), 4u);
  EXPECT_EQ(toks[0].surface, " glazed");
  EXPECT_EQ(toks[3].id, m.unknown_id());
  EXPECT_EQ(detokenize(toks), " glazed with rain?");
}

TEST(MockLogit, LeftoverMassSpreadsOverUnlisted) {
  const auto m = small_mock();
  const LogitResult d = m.next_distribution({});
  EXPECT_NEAR(d.probability_mass(), 1.0, 1e-12);
  EXPECT_NEAR(*d.log_prob_of(0), std::log(0.5), 1e-12);
  EXPECT_NEAR(*d.log_prob_of(2), std::log(0.125), 1e-12);
  const std::vector<TokenId> ctx = {0, 1};
  const LogitResult after = m.next_distribution(ctx);
  ASSERT_EQ(after.entries.size(), 1u);
  EXPECT_EQ(after.entries[0].token.surface, " rain");
}

TEST(MockLogit, LongestSuffixRowWins) {
  const auto m = small_mock();
  const std::vector<TokenId> ctx = {3, 0, 1};
  EXPECT_EQ(m.next_distribution(ctx).entries.size(), 1u);
  const std::vector<TokenId> other = {1, 0};
  EXPECT_EQ(m.next_distribution(other).entries.size(), 4u);
}

TEST(MockLogit, ContextLimit) {
  const auto m = small_mock();
  const std::vector<TokenId> ctx(7, 0);
  EXPECT_EQ(code_of([&] { m.next_distribution(ctx); }), ErrorCode::kContextTooLong);
}

TEST(MockLogit, ScoreSequenceFloorsUnseen) {
  const auto m = small_mock();
  const std::vector<TokenId> seq = {0, 1, 0};
  const auto steps = m.step_log_probs(seq);
  ASSERT_EQ(steps.size(), 3u);
  EXPECT_NEAR(steps[0], std::log(0.5), 1e-12);
  EXPECT_EQ(steps[2], kUnseenLogProb);
  EXPECT_NEAR(m.score_sequence(seq), steps[0] + steps[1] + steps[2], 1e-12);
}

TEST(MockInstruct, RulesAndSeeds) {
  MockInstructBackend m({{"THESAURUS", {"a", "b", "c"}, std::nullopt, std::nullopt},
                         {"READER", {"1", "2", "3", "4", "5", "6"}, 2, 5}},
                        {"fallback"});
  InstructRequest req{"sys", "TASK: THESAURUS", 2, std::nullopt};
  EXPECT_EQ(m.complete(req), (std::vector<std::string>{"a", "b"}));
  req.user_text = "nothing";
  EXPECT_EQ(m.complete(req), std::vector<std::string>{"fallback"});
  req = {"sys", "READER", 10, 5};
  const auto first = m.complete(req);
  EXPECT_EQ(m.complete(req), first);
  EXPECT_GE(first.size(), 2u);
  EXPECT_LE(first.size(), 5u);
  bool varied = false;
  for (std::uint64_t s = 0; s < 20 && !varied; ++s) {
    req.seed = s;
    varied = m.complete(req) != first;
  }
  EXPECT_TRUE(varied);
}

TEST(MockInstruct, BundledFixtureLoads) {
  const auto m = MockInstructBackend::from_file(data_dir() / "mock" / "instruct.json");
  const auto items = m.complete({"", "TASK: THESAURUS\nAct as a poet.\nPhrase: glazed with", 12, 1});
  EXPECT_FALSE(items.empty());
  EXPECT_LE(items.size(), 12u);
}

TEST(InstructRequest, Validation) {
  EXPECT_THROW((InstructRequest{"s", "", 1, {}}.validate()), Error);
  EXPECT_THROW((InstructRequest{"s", "u", 0, {}}.validate()), Error);
}

TEST(ParseItems, StripsMarkersAndQuotes) {
  EXPECT_EQ(parse_items("1. sheened with\n - slick with\n\n\"washed in\"\n* 'wet'\n"),
            (std::vector<std::string>{"sheened with", "slick with", "washed in", "wet"}));
  EXPECT_EQ(code_of([] { clean_items({"  ", "\n"}, 3); }), ErrorCode::kMalformedResponse);
  EXPECT_EQ(clean_items({"a\nb\nc", "d"}, 3).size(), 3u);
}

TEST(Recording, CapturesRequests) {
  auto inner = std::make_shared<MockInstructBackend>(std::vector<MockInstructBackend::Rule>{}, std::vector<std::string>{"x"});
  RecordingInstructBackend rec(inner);
  rec.complete({"s", "u1", 1, {}});
  rec.complete({"s", "u2", 1, {}});
  ASSERT_EQ(rec.requests().size(), 2u);
  EXPECT_EQ(rec.requests()[1].user_text, "u2");
  rec.clear();
  EXPECT_TRUE(rec.requests().empty());

  RecordingLogitBackend lrec(std::make_shared<MockLogitBackend>(small_mock()));
  lrec.tokenize(" glazed");
  lrec.next_distribution(std::vector<TokenId>{0});
  EXPECT_EQ(lrec.tokenized_texts(), std::vector<std::string>{" glazed"});
  EXPECT_EQ(lrec.prefixes(), (std::vector<std::vector<TokenId>>{{0}}));
}

TEST(Remote, LogitRoundTrip) {
  FakeModelServer server;
  RemoteLogitBackend backend(server.options(), 5);
  const auto toks = backend.tokenize("glazed with rain");
  ASSERT_EQ(toks.size(), 3u);
  EXPECT_EQ(toks[1].surface, " with");
  const LogitResult d = backend.next_distribution(std::vector<TokenId>{1, 2});
  ASSERT_EQ(d.entries.size(), 2u);
  EXPECT_EQ(d.entries[0].token.surface, " rain");
  EXPECT_DOUBLE_EQ(d.entries[1].log_prob, -1.5);
}

TEST(Remote, ErrorMapping) {
  FakeModelServer server;
  RemoteLogitBackend backend(server.options(), 5);
  EXPECT_EQ(code_of([&] { backend.next_distribution(std::vector<TokenId>{1, 2, 3, 4}); }),
            ErrorCode::kContextTooLong);
  RemoteOptions wrong_key = server.options();
  wrong_key.api_key = "nope";
  EXPECT_EQ(code_of([&] { RemoteLogitBackend(wrong_key).next_distribution({}); }),
            ErrorCode::kBackendUnavailable);
  server.garbage = true;
  EXPECT_EQ(code_of([&] { backend.next_distribution({}); }), ErrorCode::kMalformedResponse);
  server.garbage = false;

  RemoteOptions dead;
  dead.base_url = "http://127.0.0.1:1";
  dead.retries = 0;
  dead.connect_timeout = std::chrono::milliseconds(200);
  EXPECT_EQ(code_of([&] { RemoteLogitBackend(dead).next_distribution({}); }), ErrorCode::kBackendUnavailable);
  RemoteOptions bad_url;
  bad_url.base_url = "localhost";
  EXPECT_EQ(code_of([&] { RemoteLogitBackend{bad_url}; }), ErrorCode::kInvalidArgument);
}

TEST(Remote, RetriesServerErrors) {
  FakeModelServer server;
  server.flaky = true;
  RemoteOptions o = server.options();
  o.retries = 2;
  RemoteLogitBackend backend(o);
  EXPECT_EQ(backend.next_distribution({}).entries.size(), 2u);
  EXPECT_EQ(server.logit_calls.load(), 2);
}

TEST(Remote, CacheAvoidsRepeatCalls) {
  FakeModelServer server;
  RemoteOptions o = server.options();
  o.cache = true;
  RemoteLogitBackend backend(o);
  backend.next_distribution(std::vector<TokenId>{1});
  backend.next_distribution(std::vector<TokenId>{1});
  EXPECT_EQ(server.logit_calls.load(), 1);
}

TEST(Remote, InstructCompletion) {
  FakeModelServer server;
  RemoteInstructBackend backend(server.options());
  const auto items = backend.complete({"sys", "TASK", 5, 9});
  EXPECT_EQ(items, (std::vector<std::string>{"sheened with", "slick with", "washed in"}));
  EXPECT_EQ(server.last_complete["max_items"], 5);
  EXPECT_EQ(server.last_complete["seed"], 9);
  EXPECT_EQ(server.last_complete["system"], "sys");
}
