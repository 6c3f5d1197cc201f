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

// Runs every primary acceptance criterion against the library and the CLI,
// printing one PASS/FAIL line per criterion. Exit status is the number of
// failures.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "../support/oracles.hpp"
#include "../support/services.hpp"
#include "phraselette/annotate.hpp"
#include "phraselette/document.hpp"
#include "phraselette/orchestrator.hpp"
#include "phraselette/paths.hpp"
#include "phraselette/session.hpp"

using namespace phraselette;
using testing_support::kPoem;

namespace {

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++count_;
  }
  bool ok() const { return count_ == 0; }
  std::string summary() const {
    std::string s = std::to_string(count_) + " failed check(s)";
    for (const std::string& f : failures_) s += "; " + f;
    return s;
  }

 private:
  std::vector<std::string> failures_;
  int count_ = 0;
};

struct InletRun {
  testing_support::MockServices mock = testing_support::mock_services();
  Document doc;
  std::string inlet;
  InletContext ctx;

  InletRun(const std::string& text, CharRange range, std::optional<std::uint64_t> seed = 1) : doc("d", text) {
    inlet = doc.create_inlet(range).id;
    ctx = {doc.id(), inlet, doc.begin_run(inlet), doc.slice_context(inlet), seed};
  }

  WellOutput run(const std::string& kind, nlohmann::json params = nlohmann::json::object(),
                 std::optional<std::string> desc = std::nullopt, const Advice& advice = {}) {
    const auto& registry = *testing_support::builtin_registry();
    WellConfig cfg{kind + "-1", kind, std::move(desc), std::move(params)};
    if (!cfg.prompt_description && registry.get(kind).requires_description) cfg.prompt_description = "a poet";
    registry.validate(cfg);
    return registry.create(cfg, mock.services)->run(ctx, advice);
  }

  JobSnapshot job(const std::vector<WellConfig>& wells, std::vector<Constraint> extra = {}) {
    Orchestrator orch(testing_support::builtin_registry(), mock.services);
    JobRequest req;
    req.job_id = "job-1";
    req.context = ctx;
    req.active = wells;
    for (const WellConfig& w : wells) req.run_ids.push_back(w.well_id);
    req.extra_constraints = std::move(extra);
    auto j = orch.start(std::move(req));
    j->wait(std::chrono::seconds(60));
    return j->snapshot();
  }
};

std::pair<std::string, int> run_cli(const std::string& args) {
  const std::string cmd = std::string(PHRASELETTE_CLI) + " " + args + " 2>/dev/null";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {"", -1};
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {out, WIFEXITED(status) ? WEXITSTATUS(status) : -1};
}

// ------------------------------------------------------------------ criteria

void beam_oracle(Checker& c) {
  const auto start = std::chrono::steady_clock::now();
  SplitMix64 rng(20240601);
  int fixtures = 0;
  for (; fixtures < 240; ++fixtures) {
    const int v = static_cast<int>(rng.uniform(2, 8));
    const auto backend = MockLogitBackend::from_json(oracle::random_logit_fixture(rng, v));
    BeamParams p;
    p.max_tokens = static_cast<int>(rng.uniform(1, 4));
    p.beam_width = 1;
    for (int k = 0; k < p.max_tokens; ++k) p.beam_width *= v;
    p.result_cap = static_cast<int>(rng.uniform(1, 60));
    if (rng.unit() < 0.3) p.max_words = static_cast<int>(rng.uniform(1, 3));
    if (rng.unit() < 0.3) p.band = RealRange{-8.0 * rng.unit() - 2.0, -rng.unit()};
    const auto got = beam_search_detailed("", p, backend).surfaced;
    const auto want = oracle::exhaustive_top("", p, backend);
    const std::string tag = "fixture " + std::to_string(fixtures);
    c.expect(got.size() == want.size(), tag + ": size " + std::to_string(got.size()) + " vs " +
                                            std::to_string(want.size()));
    for (std::size_t i = 0; i < std::min(got.size(), want.size()); ++i) {
      c.expect(token_ids(got[i].tokens) == want[i].ids && got[i].text() == want[i].text &&
                   std::abs(got[i].log_prob - want[i].log_prob) < 1e-9,
               tag + ": rank " + std::to_string(i));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(fixtures >= 200, "fewer than 200 fixtures");
  c.expect(secs < 30.0, "took " + std::to_string(secs) + " s");
}

void context_count(Checker& c) {
  InletRun run(kPoem, {42, 53});
  const WellOutput out = run.run("context");
  c.expect(out.rephrasings.size() == 50, "surfaced " + std::to_string(out.rephrasings.size()) + ", want 50");
  const int total = out.insights.empty() ? 0 : out.insights[0].body["total"].get<int>();
  c.expect(total >= 50, "only " + std::to_string(total) + " reachable hypotheses");
  const double top = out.rephrasings.empty() ? 0.0 : *out.rephrasings.front().total_log_prob;
  InletRun banded(kPoem, {42, 53});
  const WellOutput b = banded.run("context", {{"band_max", top - 2.0}});
  c.expect(b.rephrasings.size() >= 20, "band-filtered run surfaced " + std::to_string(b.rephrasings.size()));
  c.expect(b.rephrasings.size() <= 50, "band-filtered run exceeds the cap");
}

void band_filter(Checker& c) {
  InletRun probe(kPoem, {42, 53});
  const WellOutput all = probe.run("context");
  const double top = *all.rephrasings.front().total_log_prob;
  const double band_max = top - 1.5;
  InletRun run(kPoem, {42, 53});
  const WellOutput banded = run.run("context", {{"band_max", band_max}});
  c.expect(!banded.rephrasings.empty(), "band removed everything");
  for (const Rephrasing& r : banded.rephrasings) {
    c.expect(*r.total_log_prob <= band_max, "\"" + r.text + "\" exceeds band max");
  }

  InletRun pooled(kPoem, {42, 53});
  const JobSnapshot snap = pooled.job({{"t", "thesaurus", "a poet", nlohmann::json::object()},
                                      {"c", "context", std::nullopt, {{"band_min", -30.0}, {"band_max", -14.0}}}});
  int thesaurus = 0;
  bool seen_outside = false;
  for (const Rephrasing& r : snap.rephrasings) {
    if (!r.total_log_prob || !r.constraint_scores.contains("c.band")) {
      c.expect(false, "\"" + r.text + "\" was not rescored");
      continue;
    }
    const bool inside = *r.total_log_prob >= -30.0 && *r.total_log_prob <= -14.0;
    c.expect(r.constraint_scores.at("c.band") == (inside ? 1.0 : 0.0), "band score of \"" + r.text + "\"");
    if (r.well_id == "t") ++thesaurus;
    if (!inside) seen_outside = true;
    c.expect(!(inside && seen_outside), "\"" + r.text + "\" inside the band ranks below an outside entry");
  }
  c.expect(thesaurus > 0, "no thesaurus rephrasings pooled");
}

void reader_shape(Checker& c) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    InletRun run(kPoem, {42, 53}, seed);
    const WellOutput out = run.run("reader", nlohmann::json::object(), "a skateboarder");
    const auto bullets = out.insights.empty() ? 0 : out.insights[0].body["bullets"].size();
    c.expect(bullets >= 1 && bullets <= 3, "seed " + std::to_string(seed) + ": " + std::to_string(bullets) + " bullets");
    const auto n = out.rephrasings.size();
    c.expect(n >= 5 && n <= 12, "seed " + std::to_string(seed) + ": " + std::to_string(n) + " rephrasings");
  }
}

void prompt_inclusion(Checker& c) {
  const std::string text = "the orchard wall was warm\nglazed with rain\nand the chickens slept\n";
  const CharRange sel{26, 37};
  {
    InletRun run(text, sel);
    const Advice advice = advice_for(word_count_constraint("w", "", 1, 4), AdviceTarget::kInstruct);
    run.run("thesaurus", nlohmann::json::object(), "a poet", advice);
    const auto reqs = run.mock.instruct->requests();
    c.expect(reqs.size() == 1, "thesaurus made " + std::to_string(reqs.size()) + " requests");
    for (const auto& r : reqs) {
      const std::string p = r.system_text + "\n" + r.user_text;
      c.expect(p.find("glazed with") != std::string::npos, "thesaurus prompt lacks the selection");
      c.expect(p.find("orchard") == std::string::npos && p.find("chickens") == std::string::npos,
               "thesaurus prompt leaks surrounding context");
      c.expect(p.find("between 1 and 4 words") != std::string::npos, "word-count clause missing");
    }
  }
  {
    InletRun run(text, sel);
    run.run("context", {{"max_tokens", 3}});
    const auto texts = run.mock.logit->tokenized_texts();
    c.expect(!texts.empty(), "context well made no queries");
    for (const std::string& t : texts) {
      c.expect(t.find("orchard wall") != std::string::npos, "context query lacks before-text");
      c.expect(t.find("glazed") == std::string::npos, "context query contains the selection");
    }
  }
  {
    InletRun run(text, sel);
    run.run("dictionary", nlohmann::json::object(), "a dictionary");
    const auto reqs = run.mock.instruct->requests();
    c.expect(!reqs.empty(), "dictionary made no request");
    for (const auto& r : reqs) {
      c.expect(r.user_text.find("orchard wall") != std::string::npos &&
                   r.user_text.find("chickens slept") != std::string::npos,
               "dictionary prompt lacks context");
    }
  }
  {
    InletRun run(text, sel);
    const Advice advice = advice_for(word_count_constraint("w", "", 1, 4), AdviceTarget::kInstruct);
    run.run("reader", nlohmann::json::object(), "a critic", advice);
    bool clause = false;
    for (const auto& r : run.mock.instruct->requests()) clause |= r.user_text.find("between 1 and 4 words") != std::string::npos;
    c.expect(clause, "reader rephrase prompt lacks the word-count clause");
  }
}

void sound_fixture(Checker& c) {
  const Phonology phonology = Phonology::load_default();
  c.expect(render_phonemes(phonology.phrase_phonemes("captivating mien")) == "K AE P T IH V EY T IH NG M IY N",
           "captivating mien pronounced " + render_phonemes(phonology.phrase_phonemes("captivating mien")));
  const SoundRef ref{parse_phonemes("K AE P"), SoundMode::kStartsWith};
  for (const char* p : {"captivating mien", "captivating", "captivating glances"}) {
    c.expect(phonology.match_sound(p, ref) == 1.0, std::string("rejected \"") + p + "\"");
  }
  for (const char* p : {"mien", "mien captivating", "mien so captivating"}) {
    c.expect(phonology.match_sound(p, ref) == 0.0, std::string("accepted \"") + p + "\"");
  }
  const auto pairs = oracle::rhyme_pairs(oracle::read_word_groups(PHRASELETTE_TEST_FIXTURES "/rhyme_words.txt"));
  c.expect(pairs.size() == 100, "rhyme fixture has " + std::to_string(pairs.size()) + " pairs");
  for (const auto& [word, reference] : pairs) {
    const auto ref_ph = phonology.pronounce(reference).phonemes;
    const bool want = oracle::rhymes(phonology.phrase_phonemes(word), ref_ph);
    const bool got = phonology.match_sound(word, {ref_ph, SoundMode::kRhymesWith}) == 1.0;
    c.expect(got == want, word + " / " + reference);
  }
}

void pos_chain(Checker& c) {
  SplitMix64 rng(1000);
  auto random_tags = [&](int max_len) {
    std::vector<PosTag> out(static_cast<std::size_t>(rng.uniform(0, max_len)));
    for (PosTag& t : out) t = kAllPosTags[static_cast<std::size_t>(rng.uniform(0, 3))];
    return out;
  };
  for (int i = 0; i < 1000; ++i) {
    const auto items = random_tags(8);
    auto pattern = random_tags(4);
    if (rng.unit() < 0.3 && !items.empty()) {
      const auto a = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(items.size()) - 1));
      const auto b = static_cast<std::size_t>(rng.uniform(static_cast<std::int64_t>(a), static_cast<std::int64_t>(items.size())));
      pattern.assign(items.begin() + static_cast<std::ptrdiff_t>(a), items.begin() + static_cast<std::ptrdiff_t>(b));
    }
    std::map<MatchMode, bool> m;
    for (MatchMode mode : {MatchMode::kExact, MatchMode::kStartsWith, MatchMode::kEndsWith, MatchMode::kContains,
                           MatchMode::kInOrder}) {
      m[mode] = sequence_matches<PosTag>(items, pattern, mode);
      c.expect(m[mode] == oracle::brute_match(items, pattern, mode),
               "case " + std::to_string(i) + " " + std::string(to_string(mode)) + " disagrees with brute force");
    }
    c.expect(!m[MatchMode::kExact] || (m[MatchMode::kStartsWith] && m[MatchMode::kEndsWith]), "exact without starts/ends");
    c.expect(!(m[MatchMode::kStartsWith] || m[MatchMode::kEndsWith]) || m[MatchMode::kContains], "starts/ends without contains");
    c.expect(!m[MatchMode::kContains] || m[MatchMode::kInOrder], "contains without inOrder");
  }
  const auto eval = read_tagged_corpus(data_dir() / "pos" / "eval.txt");
  c.expect(eval.size() == 200, "eval fixture has " + std::to_string(eval.size()) + " phrases");
  const double acc = PosTagger::load_default().accuracy(eval);
  c.expect(acc >= 0.90, "tagger accuracy " + std::to_string(acc));
}

void scoring_laws(Checker& c) {
  const auto mock = testing_support::mock_services();
  const std::vector<std::string> texts = {"glazed with", "sheened with", "burnished with", "filmed over", "a",
                                          "vitrified per", "crystallized amid the stone", "red"};
  std::vector<Constraint> cs = {pos_constraint("pos", "", {PosTag::VERB, PosTag::ADP}, MatchMode::kExact),
                                sound_constraint("snd", "", {parse_phonemes("W IH DH"), SoundMode::kEndsWith}),
                                word_count_constraint("wc", "", 2, 2), syllable_constraint("syl", "", 2, 3),
                                band_constraint("band", "", -40, -10)};
  SplitMix64 rng(77);
  std::vector<Rephrasing> pool;
  for (const std::string& t : texts) {
    Rephrasing r = make_rephrasing(t, "w", rng.unit(), 0);
    annotate_pos(r, *mock.services.tagger);
    annotate_phonemes(r, *mock.services.phonology);
    annotate_log_probs(r, "glazed with rain\n", *mock.services.logit);
    const ScoreSummary s = score_all(cs, r);
    for (const auto& [id, v] : s.scores) c.expect(v >= 0.0 && v <= 1.0, id + " out of [0,1] for " + t);
    for (int k = 0; k < 20; ++k) {
      auto shuffled = cs;
      rng.shuffle(shuffled);
      c.expect(std::abs(score_all(shuffled, r).overall - s.overall) < 1e-12, "mean depends on order for " + t);
    }
    apply_scores(r, s);
    pool.push_back(r);
  }
  for (int lo = 0; lo < 6; ++lo) {
    for (int hi = lo; hi < lo + 4; ++hi) {
      const IntRange range{lo, hi};
      for (int v = 0; v < 20; ++v) {
        const double here = graded_score(v, range);
        c.expect(here >= 0.0 && here <= 1.0, "graded score out of range");
        if (v >= hi) c.expect(graded_score(v + 1, range) <= here, "graded score rises above max");
        if (v > 0 && v <= lo) c.expect(graded_score(v - 1, range) <= here, "graded score rises below min");
        if (range.contains(v)) c.expect(here == 1.0, "in-range score below 1");
      }
    }
  }
  const auto sorted = sort_and_dedupe(pool);
  bool partial = false;
  int full = 0;
  for (const Rephrasing& r : sorted) {
    if (!r.fully_matched) partial = true;
    full += r.fully_matched;
    c.expect(!(partial && r.fully_matched), "fully matched \"" + r.text + "\" sorts after a partial match");
  }
  c.expect(full > 0 && full < static_cast<int>(sorted.size()), "fixture lacks both full and partial matches");
}

void determinism(Checker& c) {
  const std::string sample = std::string(PHRASELETTE_SAMPLES) + "/red_wheelbarrow.txt";
  const std::string args = "run --text " + sample +
                           " --inlet 42:53 --well thesaurus --well reader --well context --well sound --well dictionary"
                           " --constraint words:1-4 --constraint 'pos:VERB ADP:exact' --backend mock --seed 7";
  const auto first = run_cli(args);
  c.expect(first.second == 0, "CLI exited with " + std::to_string(first.second));
  c.expect(first.first.size() > 100, "CLI printed too little");
  for (int i = 1; i < 10; ++i) {
    const auto again = run_cli(args);
    c.expect(again.second == 0 && again.first == first.first, "run " + std::to_string(i + 1) + " differs");
  }

  const auto dir = std::filesystem::temp_directory_path() / ("phraselette-acceptance-" + std::to_string(now_ms()));
  std::filesystem::create_directories(dir);
  Session s;
  s.id = "poem";
  s.document = Document("poem", kPoem);
  const std::string a = s.document.create_inlet({42, 53}).id;
  s.document.create_inlet({0, 7});
  s.well_configs = {{"poem-words", "words", std::nullopt, {{"pos", "VERB ADP"}}},
                    {"poem-w1", "thesaurus", "Tristan Tzara", nlohmann::json::object()},
                    {"poem-w2", "context", std::nullopt, {{"band_max", -9.0}}}};
  s.active_wells = {"poem-words", "poem-w1", "poem-w2"};
  s.constraints = {word_count_constraint("c1", "", 1, 4), syllable_constraint("c2", "", 2, 4),
                   pos_constraint("c3", "poem-words", {PosTag::VERB}, MatchMode::kStartsWith),
                   sound_constraint("c4", "", {parse_phonemes("G L EY1 Z D"), SoundMode::kRhymesWith}),
                   band_constraint("c5", "poem-w2", -std::numeric_limits<double>::infinity(), -9.0)};
  InletRun run(kPoem, {42, 53});
  const JobSnapshot snap = run.job({{"poem-w1", "thesaurus", "Tristan Tzara", nlohmann::json::object()}});
  s.history.push_back({a, 1, "job-1", snap.rephrasings});
  s.log_event("user", "createDocument");
  s.log_event("user", "runWells", {{"inletId", a}});
  save_session(s, dir / "poem.json");
  c.expect(load_session(dir / "poem.json") == s, "session changed across save/load");
  Session empty;
  empty.id = "empty";
  empty.document = Document("empty", "");
  save_session(empty, dir / "empty.json");
  c.expect(load_session(dir / "empty.json") == empty, "empty session changed across save/load");
  std::filesystem::remove_all(dir);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Checker&)>>> criteria = {
      {"beam search equals exhaustive enumeration", beam_oracle},
      {"context well surfaces exactly 50 (>= 20 banded)", context_count},
      {"band filtering and cross-well rescoring", band_filter},
      {"reader pipeline shape over 50 seeds", reader_shape},
      {"prompt inclusion matrix", prompt_inclusion},
      {"sound constraint fixture and rhyme oracle", sound_fixture},
      {"POS implication chain and tagger accuracy", pos_chain},
      {"constraint scoring laws", scoring_laws},
      {"end-to-end determinism and session round trip", determinism},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Checker c;
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("threw: ") + e.what());
    }
    if (c.ok()) {
      std::cout << "PASS  " << name << "\n";
    } else {
      std::cout << "FAIL  " << name << ": " << c.summary() << "\n";
      ++failed;
    }
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed;
}
