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

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "phraselette/annotate.hpp"
#include "phraselette/beam_search.hpp"
#include "phraselette/error.hpp"
#include "phraselette/text.hpp"
#include "phraselette/wells.hpp"

namespace phraselette {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <typename T>
const T& require(const std::shared_ptr<const T>& p, std::string_view what) {
  if (!p) throw Error(ErrorCode::kBackendUnavailable, std::string(what) + " is not configured");
  return *p;
}

MatchMode match_mode_param(const WellConfig& cfg, MatchMode fallback) {
  auto name = params::string(cfg.parameters, "mode");
  if (!name) return fallback;
  auto mode = parse_match_mode(*name);
  if (!mode) throw Error(ErrorCode::kInvalidArgument, "unknown match mode \"" + *name + "\"");
  return *mode;
}

std::vector<std::string> instruct_items(const InstructBackend& backend, const PromptTemplate& t,
                                        const PromptVars& vars, int max_items,
                                        const InletContext& ctx) {
  InstructRequest req;
  req.system_text = t.render_system(vars);
  req.user_text = t.render_user(vars);
  req.max_output_items = max_items;
  req.seed = ctx.seed;
  return clean_items(backend.complete(req), max_items);
}

std::vector<Rephrasing> rank_items(const std::vector<std::string>& items, const std::string& well_id,
                                   std::int64_t generation) {
  std::vector<Rephrasing> out;
  const auto n = static_cast<double>(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    out.push_back(make_rephrasing(items[i], well_id, 1.0 - static_cast<double>(i) / n, generation));
  }
  return out;
}

// ---------------------------------------------------------------- words

class WordsWell : public Well {
 public:
  using Well::Well;

  static void validate(const WellConfig& cfg) {
    if (auto pos = params::string(cfg.parameters, "pos"); pos && !text::trim(*pos).empty()) {
      if (parse_pos_tags(*pos).empty()) throw Error(ErrorCode::kInvalidArgument, "POS pattern is empty");
    }
    match_mode_param(cfg, MatchMode::kExact);
    params::int_range(cfg.parameters, "words");
  }

  std::vector<Constraint> constraints(const InletContext&) const override {
    std::vector<Constraint> out;
    if (auto pos = params::string(config().parameters, "pos"); pos && !text::trim(*pos).empty()) {
      out.push_back(pos_constraint(id() + ".pos", id(), parse_pos_tags(*pos),
                                   match_mode_param(config(), MatchMode::kExact)));
    }
    if (auto words = params::int_range(config().parameters, "words")) {
      out.push_back(word_count_constraint(id() + ".words", id(), words->min, words->max));
    }
    return out;
  }

  WellOutput run(const InletContext& ctx, const Advice&) const override {
    WellOutput out;
    out.emitted_constraints = constraints(ctx);
    out.view = ViewKind::kPos;
    return out;
  }
};

// ------------------------------------------------------------ thesaurus

class ThesaurusWell : public Well {
 public:
  ThesaurusWell(const WellConfig& cfg, WellServices services) : Well(cfg), services_(std::move(services)) {}

  static void validate(const WellConfig& cfg) {
    if (auto n = params::integer(cfg.parameters, "count"); n && *n < 1) {
      throw Error(ErrorCode::kInvalidArgument, "count must be >= 1");
    }
  }

  WellOutput run(const InletContext& ctx, const Advice& advice) const override {
    const int count = params::integer(config().parameters, "count").value_or(12);
    const PromptVars vars = {
        {"description", *config().prompt_description},
        {"count", std::to_string(count)},
        {"constraints", render_clauses(advice.prompt_clauses)},
        {"selection", ctx.slice.selection},
    };
    const auto& prompts = require(services_.prompts, "prompt library");
    const auto items = instruct_items(require(services_.instruct, "instruct backend"),
                                      prompts.get("thesaurus"), vars, count, ctx);
    WellOutput out;
    out.rephrasings = rank_items(items, id(), ctx.generation);
    return out;
  }

 private:
  WellServices services_;
};

// --------------------------------------------------------------- reader

constexpr int kMaxBullets = 3;
constexpr int kMinReaderItems = 5;
constexpr int kMaxReaderItems = 12;
constexpr const char* kMoreClause =
    "PRODUCE MORE OPTIONS: the last answer was too short. Write at least 5 distinct rephrasings.\n";

class ReaderWell : public Well {
 public:
  ReaderWell(const WellConfig& cfg, WellServices services) : Well(cfg), services_(std::move(services)) {}

  static void validate(const WellConfig& cfg) {
    params::boolean(cfg.parameters, "match_document_language");
    params::string(cfg.parameters, "language");
  }

  std::string language_clause() const {
    if (auto lang = params::string(config().parameters, "language"); lang && !text::trim(*lang).empty()) {
      return " Respond in " + std::string(text::trim(*lang)) + ".";
    }
    if (params::boolean(config().parameters, "match_document_language").value_or(true)) {
      return " Respond in the language of the document.";
    }
    return "";
  }

  WellOutput run(const InletContext& ctx, const Advice& advice) const override {
    const auto& prompts = require(services_.prompts, "prompt library");
    const auto& backend = require(services_.instruct, "instruct backend");
    PromptVars vars = {
        {"description", *config().prompt_description},
        {"before", ctx.slice.before},
        {"selection", ctx.slice.selection},
        {"after", ctx.slice.after},
        {"language", language_clause()},
        {"count", std::to_string(kMaxBullets)},
    };
    std::vector<std::string> bullets =
        instruct_items(backend, prompts.get("reader_critique"), vars, kMaxReaderItems, ctx);
    if (bullets.size() > kMaxBullets) bullets.resize(kMaxBullets);

    std::string critique;
    for (const std::string& b : bullets) critique += "- " + b + "\n";
    vars["critique"] = critique;
    vars["count"] = std::to_string(kMaxReaderItems);
    vars["constraints"] = render_clauses(advice.prompt_clauses);
    vars["more"] = "";
    const PromptTemplate& rephrase = prompts.get("reader_rephrase");
    std::vector<std::string> items = instruct_items(backend, rephrase, vars, kMaxReaderItems, ctx);
    if (static_cast<int>(items.size()) < kMinReaderItems) {
      vars["more"] = kMoreClause;
      for (std::string& extra : instruct_items(backend, rephrase, vars, kMaxReaderItems, ctx)) {
        if (std::ranges::find(items, extra) == items.end()) items.push_back(std::move(extra));
      }
    }
    if (static_cast<int>(items.size()) > kMaxReaderItems) items.resize(kMaxReaderItems);

    WellOutput out;
    out.insights.push_back(Insight{InsightKind::kTextBullets, id(),
                                   {{"bullets", bullets}, {"persona", *config().prompt_description}}});
    out.rephrasings = rank_items(items, id(), ctx.generation);
    return out;
  }

 private:
  WellServices services_;
};

// -------------------------------------------------------------- context

struct BandSetting {
  std::optional<double> min;
  std::optional<double> max;
  bool set() const { return min || max; }
};

BandSetting band_param(const WellConfig& cfg) {
  return {params::real(cfg.parameters, "band_min"), params::real(cfg.parameters, "band_max")};
}

class ContextWell : public Well {
 public:
  ContextWell(const WellConfig& cfg, WellServices services) : Well(cfg), services_(std::move(services)) {}

  static void validate(const WellConfig& cfg) {
    const auto& p = cfg.parameters;
    for (const char* key : {"beam_width", "max_tokens", "result_cap", "bins", "tokens_per_word", "threads"}) {
      if (auto v = params::integer(p, key); v && *v < 1) {
        throw Error(ErrorCode::kInvalidArgument, std::string(key) + " must be >= 1");
      }
    }
    params::boolean(p, "length_normalize");
    params::boolean(p, "pos_prefix_pruning");
    const BandSetting band = band_param(cfg);
    if (band.set()) band_constraint("band", cfg.well_id, band.min.value_or(-kInf), band.max.value_or(0.0));
  }

  std::vector<Constraint> constraints(const InletContext&) const override {
    const BandSetting band = band_param(config());
    if (!band.set()) return {};
    return {band_constraint(id() + ".band", id(), band.min.value_or(-kInf), band.max.value_or(0.0))};
  }

  BeamParams beam_params(const Advice& advice) const {
    const auto& p = config().parameters;
    const auto& sp = advice.search_params;
    BeamParams bp;
    bp.beam_width = params::integer(p, "beam_width").value_or(bp.beam_width);
    bp.result_cap = params::integer(p, "result_cap").value_or(bp.result_cap);
    bp.length_normalize = params::boolean(p, "length_normalize").value_or(false);
    bp.threads = params::integer(p, "threads").value_or(1);
    if (auto mt = params::integer(p, "max_tokens")) {
      bp.max_tokens = *mt;
    } else if (sp.contains("maxTokens")) {
      const int per_word = params::integer(p, "tokens_per_word").value_or(kTokensPerWord);
      bp.max_tokens = sp.contains("maxWords") ? std::max(1, sp["maxWords"].get<int>() * per_word)
                                              : sp["maxTokens"].get<int>();
    }
    if (sp.contains("minWords")) bp.min_words = std::max(1, sp["minWords"].get<int>());
    if (sp.contains("maxWords")) bp.max_words = std::max(bp.min_words, sp["maxWords"].get<int>());

    RealRange band{-kInf, 0.0};
    bool banded = false;
    const BandSetting own = band_param(config());
    if (own.set()) {
      band = {own.min.value_or(-kInf), own.max.value_or(0.0)};
      banded = true;
    }
    if (sp.contains("bandMax")) {
      band.max = std::min(band.max, sp["bandMax"].get<double>());
      if (!sp["bandMin"].is_null()) band.min = std::max(band.min, sp["bandMin"].get<double>());
      banded = true;
    }
    if (banded) bp.band = band;

    if (params::boolean(p, "pos_prefix_pruning").value_or(false) && sp.contains("posPattern") &&
        services_.tagger) {
      const std::vector<PosTag> pattern = parse_pos_tags(sp["posPattern"].get<std::string>());
      const auto mode = parse_match_mode(sp.value("mode", "exact")).value_or(MatchMode::kExact);
      if (mode == MatchMode::kExact || mode == MatchMode::kStartsWith) {
        auto tagger = services_.tagger;
        bp.prefix_filter = [tagger, pattern, mode](std::string_view partial) {
          // Only words followed by whitespace are complete.
          std::vector<std::string> words;
          for (std::string_view w : text::split_words(partial)) words.emplace_back(w);
          if (!partial.empty() && !text::is_space(partial.back()) && !words.empty()) words.pop_back();
          if (words.empty()) return true;
          const std::vector<PosTag> tags = tagger->tag_words(words);
          const std::size_t n = std::min(tags.size(), pattern.size());
          if (mode == MatchMode::kExact && tags.size() > pattern.size()) return false;
          return std::equal(tags.begin(), tags.begin() + static_cast<std::ptrdiff_t>(n), pattern.begin());
        };
      }
    }
    return bp;
  }

  WellOutput run(const InletContext& ctx, const Advice& advice) const override {
    const LogitBackend& backend = require(services_.logit, "logit backend");
    const BeamParams bp = beam_params(advice);
    WellOutput out;
    out.view = ViewKind::kLogProb;
    out.emitted_constraints = constraints(ctx);

    SearchResult result;
    if (!bp.band || bp.band->min <= bp.band->max) {
      result = beam_search_detailed(ctx.slice.before, bp, backend);
    } else {
      BeamParams unbanded = bp;
      unbanded.band.reset();
      result = beam_search_detailed(ctx.slice.before, unbanded, backend);
      result.surfaced.clear();
    }
    for (const Hypothesis& h : result.surfaced) {
      Rephrasing r = make_rephrasing(h.text(), id(), h.score(bp.length_normalize), ctx.generation);
      assign_log_probs(r, h.tokens, h.step_log_probs);
      out.rephrasings.push_back(std::move(r));
    }
    if (!result.candidates.empty()) {
      const int bins = params::integer(config().parameters, "bins").value_or(20);
      const Histogram hist = histogram_of(result.candidates, bins);
      nlohmann::json band = nullptr;
      if (bp.band) {
        band = {{"min", std::isinf(bp.band->min) ? nlohmann::json(nullptr) : nlohmann::json(bp.band->min)},
                {"max", bp.band->max}};
      }
      out.insights.push_back(Insight{InsightKind::kHistogram, id(),
                                     {{"binEdges", hist.bin_edges},
                                      {"counts", hist.counts},
                                      {"total", hist.total},
                                      {"band", band},
                                      {"surfaced", out.rephrasings.size()}}});
    }
    return out;
  }

 private:
  WellServices services_;
};

// ---------------------------------------------------------------- sound

class SoundWell : public Well {
 public:
  SoundWell(const WellConfig& cfg, WellServices services) : Well(cfg), services_(std::move(services)) {}

  static void validate(const WellConfig& cfg) {
    if (auto ph = params::string(cfg.parameters, "phonemes"); ph && !text::trim(*ph).empty()) {
      parse_phonemes(*ph);
    }
    if (auto mode = params::string(cfg.parameters, "mode"); mode && !parse_sound_mode(*mode)) {
      throw Error(ErrorCode::kInvalidArgument, "unknown sound mode \"" + *mode + "\"");
    }
    params::int_range(cfg.parameters, "syllables");
  }

  std::optional<SoundRef> reference(const InletContext& ctx) const {
    const auto& p = config().parameters;
    const auto mode_name = params::string(p, "mode");
    if (auto ph = params::string(p, "phonemes"); ph && !text::trim(*ph).empty()) {
      return SoundRef{parse_phonemes(*ph), mode_name ? *parse_sound_mode(*mode_name) : SoundMode::kStartsWith};
    }
    try {
      return SoundRef{require(services_.phonology, "phonology").phrase_phonemes(ctx.slice.selection),
                      mode_name ? *parse_sound_mode(*mode_name) : SoundMode::kRhymesWith};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUnpronounceable) throw;
      return std::nullopt;
    }
  }

  std::vector<Constraint> constraints(const InletContext& ctx) const override {
    std::vector<Constraint> out;
    if (auto ref = reference(ctx)) out.push_back(sound_constraint(id() + ".sound", id(), std::move(*ref)));
    if (auto syl = params::int_range(config().parameters, "syllables")) {
      out.push_back(syllable_constraint(id() + ".syllables", id(), syl->min, syl->max));
    }
    return out;
  }

  WellOutput run(const InletContext& ctx, const Advice&) const override {
    const Phonology& phonology = require(services_.phonology, "phonology");
    WellOutput out;
    out.view = ViewKind::kPhonemes;
    out.emitted_constraints = constraints(ctx);

    nlohmann::json words = nlohmann::json::array();
    std::vector<Phoneme> all;
    for (std::string_view w : text::split_words(ctx.slice.selection)) {
      if (word_pieces(w).empty()) continue;
      const Pronunciation p = phonology.pronounce(w);
      all.insert(all.end(), p.phonemes.begin(), p.phonemes.end());
      nlohmann::json alternates = nlohmann::json::array();
      for (const auto& alt : phonology.alternates(w)) alternates.push_back(render_phonemes(alt, true));
      words.push_back({{"word", p.word},
                       {"phonemes", render_phonemes(p.phonemes, true)},
                       {"source", to_string(p.source)},
                       {"syllables", syllable_count(p)},
                       {"alternates", alternates}});
    }
    out.insights.push_back(Insight{InsightKind::kPronunciationAnnotation, id(),
                                   {{"text", render_phonemes(all)},
                                    {"stressed", render_phonemes(all, true)},
                                    {"syllables", syllable_count(all)},
                                    {"words", words}}});
    return out;
  }

 private:
  WellServices services_;
};

// ----------------------------------------------------------- dictionary

class DictionaryWell : public Well {
 public:
  DictionaryWell(const WellConfig& cfg, WellServices services) : Well(cfg), services_(std::move(services)) {}

  WellOutput run(const InletContext& ctx, const Advice&) const override {
    const PromptVars vars = {
        {"description", *config().prompt_description},
        {"before", ctx.slice.before},
        {"selection", ctx.slice.selection},
        {"after", ctx.slice.after},
    };
    const auto items = instruct_items(require(services_.instruct, "instruct backend"),
                                      require(services_.prompts, "prompt library").get("dictionary"),
                                      vars, 8, ctx);
    WellOutput out;
    out.insights.push_back(Insight{InsightKind::kDefinition, id(),
                                   {{"text", text::join(items, " ")},
                                    {"selection", ctx.slice.selection},
                                    {"description", *config().prompt_description}}});
    return out;
  }

 private:
  WellServices services_;
};

template <typename W>
std::function<std::unique_ptr<Well>(const WellConfig&, const WellServices&)> factory() {
  return [](const WellConfig& cfg, const WellServices& services) -> std::unique_ptr<Well> {
    if constexpr (std::is_constructible_v<W, const WellConfig&, WellServices>) {
      return std::make_unique<W>(cfg, services);
    } else {
      return std::make_unique<W>(cfg);
    }
  };
}

}  // namespace

void register_builtin_wells(WellRegistry& registry) {
  registry.add(WellDescriptor{
      .kind = well_kind::kWords,
      .capabilities = {.constrains = true, .views = true},
      .view = ViewKind::kPos,
      .always_active = true,
      .parameter_docs = {{"pos", "POS pattern, e.g. \"VERB ADV\""},
                         {"mode", "exact | startsWith | endsWith | contains | inOrder"},
                         {"words", "[min, max] word count"}},
      .validate = WordsWell::validate,
      .create = factory<WordsWell>(),
  });
  registry.add(WellDescriptor{
      .kind = well_kind::kThesaurus,
      .capabilities = {.generates = true},
      .requires_description = true,
      .parameter_docs = {{"count", "number of items to request (default 12)"}},
      .validate = ThesaurusWell::validate,
      .create = factory<ThesaurusWell>(),
  });
  registry.add(WellDescriptor{
      .kind = well_kind::kReader,
      .capabilities = {.generates = true, .insights = true},
      .requires_description = true,
      .parameter_docs = {{"match_document_language", "ask for output in the document's language (default true)"},
                         {"language", "ask for output in this language instead"}},
      .validate = ReaderWell::validate,
      .create = factory<ReaderWell>(),
  });
  registry.add(WellDescriptor{
      .kind = well_kind::kContext,
      .capabilities = {.generates = true, .constrains = true, .insights = true, .views = true},
      .view = ViewKind::kLogProb,
      .advice_target = AdviceTarget::kSearch,
      .parameter_docs = {{"beam_width", "live hypotheses kept per step (default 64)"},
                         {"max_tokens", "token budget per hypothesis (default 8)"},
                         {"result_cap", "most rephrasings surfaced (default 50)"},
                         {"band_min", "lower log-probability bound"},
                         {"band_max", "upper log-probability bound"},
                         {"length_normalize", "rank by mean token log-probability"},
                         {"bins", "histogram bins (default 20)"},
                         {"tokens_per_word", "token budget per advised word (default 2)"},
                         {"threads", "parallel distribution requests per step"},
                         {"pos_prefix_pruning", "experimental: prune hypotheses off the POS pattern"}},
      .validate = ContextWell::validate,
      .create = factory<ContextWell>(),
  });
  registry.add(WellDescriptor{
      .kind = well_kind::kSound,
      .capabilities = {.constrains = true, .insights = true, .views = true},
      .view = ViewKind::kPhonemes,
      .parameter_docs = {{"phonemes", "manual reference, e.g. \"K AE P\"; default: the selection"},
                         {"mode", "startsWith | endsWith | contains | rhymesWith"},
                         {"syllables", "[min, max] syllable count"}},
      .validate = SoundWell::validate,
      .create = factory<SoundWell>(),
  });
  registry.add(WellDescriptor{
      .kind = well_kind::kDictionary,
      .capabilities = {.insights = true},
      .requires_description = true,
      .create = factory<DictionaryWell>(),
  });
}

}  // namespace phraselette
