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

#include "phraselette/pos_tagger.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numeric>

#include "phraselette/error.hpp"
#include "phraselette/paths.hpp"
#include "phraselette/rng.hpp"
#include "phraselette/text.hpp"

namespace phraselette {

namespace {

constexpr const char* kMagic = "phraselette-pos";
constexpr int kModelVersion = 1;

bool is_ascii_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

// Strips surrounding ASCII punctuation; words made only of punctuation are
// returned unchanged.
std::string_view core_of(std::string_view w) {
  std::size_t b = 0;
  std::size_t e = w.size();
  auto is_punct = [](char c) { return !is_ascii_alnum(c) && static_cast<unsigned char>(c) < 0x80; };
  while (b < e && is_punct(w[b])) ++b;
  while (e > b && is_punct(w[e - 1])) --e;
  return b == e ? w : w.substr(b, e - b);
}

bool is_punctuation(std::string_view w) {
  for (char c : w) {
    if (is_ascii_alnum(c) || static_cast<unsigned char>(c) >= 0x80) return false;
  }
  return !w.empty();
}

bool is_number(std::string_view w) {
  bool digit = false;
  for (char c : w) {
    if (c >= '0' && c <= '9') {
      digit = true;
    } else if (c != ',' && c != '.' && c != '-' && c != '/' && c != ':') {
      return false;
    }
  }
  return digit;
}

std::string shape_of(std::string_view w) {
  std::string s;
  for (char c : w) {
    char k = 'o';
    if (c >= 'A' && c <= 'Z') k = 'X';
    else if (c >= 'a' && c <= 'z') k = 'x';
    else if (c >= '0' && c <= '9') k = 'd';
    else if (c == '-') k = '-';
    if (s.empty() || s.back() != k) s.push_back(k);
  }
  return s;
}

std::string normalize(std::string_view word) {
  const std::string_view core = core_of(word);
  if (is_number(core)) return "!num";
  return text::to_lower_ascii(core);
}

std::string suffix(const std::string& w, std::size_t n) {
  return w.size() <= n ? w : w.substr(w.size() - n);
}

const std::unordered_map<std::string, PosTag>& closed_class() {
  static const std::unordered_map<std::string, PosTag> table = [] {
    std::unordered_map<std::string, PosTag> t;
    auto add = [&](PosTag tag, std::initializer_list<const char*> words) {
      for (const char* w : words) t.emplace(w, tag);
    };
    add(PosTag::DET, {"the", "a", "an", "this", "that", "these", "those", "every", "each", "some",
                      "any", "no", "another", "either", "neither", "all", "both"});
    add(PosTag::PRON, {"i", "you", "he", "she", "it", "we", "they", "me", "him", "her", "us",
                       "them", "my", "your", "his", "its", "our", "their", "mine", "yours",
                       "ours", "theirs", "myself", "yourself", "himself", "herself", "itself",
                       "ourselves", "themselves", "who", "whom", "whose", "what", "which",
                       "someone", "something", "nothing", "everything", "anyone", "everyone"});
    add(PosTag::CONJ, {"and", "or", "but", "nor", "yet"});
    add(PosTag::SCONJ, {"if", "because", "while", "although", "though", "since", "unless",
                        "whether", "until", "whereas", "once"});
    add(PosTag::ADP, {"of", "in", "on", "at", "by", "with", "from", "onto", "into", "over",
                      "under", "per", "via", "about", "through", "after", "before", "beside",
                      "upon", "across", "against", "among", "around", "behind", "below",
                      "beneath", "between", "beyond", "during", "inside", "near", "off",
                      "toward", "towards", "within", "without", "along", "amid", "like", "for"});
    add(PosTag::AUX, {"is", "are", "was", "were", "be", "been", "being", "am", "will", "would",
                      "can", "could", "shall", "should", "may", "might", "must"});
    add(PosTag::PART, {"not", "to", "n't"});
    add(PosTag::INTJ, {"oh", "wow", "hey", "alas", "yes", "ouch", "hello"});
    return t;
  }();
  return table;
}

std::string lex_feature(const TagLexicon& lex, const std::string& raw) {
  if (auto tag = lex.lookup(core_of(raw))) return std::string(to_string(*tag));
  return "-";
}

std::vector<std::string> features(const std::vector<std::string>& raw,
                                  const std::vector<std::string>& norm, std::size_t i,
                                  std::string_view p1, std::string_view p2, const TagLexicon& lex,
                                  const std::vector<std::string>& rule) {
  const std::string& w = norm[i];
  const std::string prev = i > 0 ? norm[i - 1] : "<s>";
  const std::string next = i + 1 < norm.size() ? norm[i + 1] : "</s>";
  const std::string lx = lex_feature(lex, raw[i]);
  const std::string lx_prev = i > 0 ? lex_feature(lex, raw[i - 1]) : "<s>";
  const std::string lx_next = i + 1 < raw.size() ? lex_feature(lex, raw[i + 1]) : "</s>";
  std::vector<std::string> f = {
      "b",
      "w=" + w,
      "s1=" + suffix(w, 1),
      "s2=" + suffix(w, 2),
      "s3=" + suffix(w, 3),
      "pf=" + w.substr(0, 1),
      "sh=" + shape_of(core_of(raw[i])),
      "t1=" + std::string(p1),
      "t12=" + std::string(p1) + "|" + std::string(p2),
      "t1w=" + std::string(p1) + "|" + w,
      "w-1=" + prev,
      "w+1=" + next,
      "s3-1=" + suffix(prev, 3),
      "s3+1=" + suffix(next, 3),
      "lx=" + lx,
      "lx-1=" + lx_prev,
      "lx+1=" + lx_next,
      "lxt1=" + lx + "|" + std::string(p1),
      "lxn=" + lx + "|" + lx_next,
      "rt=" + rule[i],
      "rt-1=" + (i > 0 ? rule[i - 1] : "<s>"),
      "rt+1=" + (i + 1 < rule.size() ? rule[i + 1] : "</s>"),
      "rtt1=" + rule[i] + "|" + std::string(p1),
  };
  if (i == 0) f.push_back("first");
  if (i + 1 == norm.size()) f.push_back("last");
  return f;
}

PosTag forced_tag(std::string_view word) {
  const std::string_view core = core_of(word);
  if (is_punctuation(core)) return PosTag::PUNCT;
  if (is_number(core)) return PosTag::NUM;
  return PosTag::X;
}

}  // namespace

TaggedSentence parse_tagged_line(std::string_view line) {
  TaggedSentence out;
  for (std::string_view item : text::split_words(line)) {
    const auto slash = item.rfind('/');
    if (slash == std::string_view::npos || slash == 0) {
      throw Error(ErrorCode::kInvalidArgument, "expected word/TAG, got \"" + std::string(item) + "\"");
    }
    auto tag = parse_pos_tag(item.substr(slash + 1));
    if (!tag) throw Error(ErrorCode::kInvalidArgument, "unknown tag in \"" + std::string(item) + "\"");
    out.emplace_back(std::string(item.substr(0, slash)), *tag);
  }
  return out;
}

std::vector<TaggedSentence> read_tagged_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open corpus " + path.string());
  std::vector<TaggedSentence> corpus;
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    corpus.push_back(parse_tagged_line(t));
  }
  return corpus;
}

TagLexicon TagLexicon::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open tag lexicon " + path.string());
  TagLexicon lex;
  std::string line;
  while (std::getline(in, line)) {
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.starts_with('#')) continue;
    auto tag = parse_pos_tag(text::trim(std::string_view(line).substr(tab + 1)));
    if (!tag) throw Error(ErrorCode::kInvalidArgument, "bad tag lexicon line \"" + line + "\"");
    lex.add(line.substr(0, tab), *tag);
  }
  return lex;
}

std::optional<PosTag> TagLexicon::lookup(std::string_view word) const {
  if (auto it = entries_.find(std::string(word)); it != entries_.end()) return it->second;
  if (auto it = entries_.find(text::to_lower_ascii(word)); it != entries_.end()) return it->second;
  return std::nullopt;
}

PosTagger::PosTagger(TagLexicon lexicon) : lexicon_(std::move(lexicon)) {}

PosTagger PosTagger::train(const std::vector<TaggedSentence>& corpus, TagLexicon lexicon,
                           const TrainOptions& options) {
  PosTagger tagger(std::move(lexicon));
  struct Stats {
    std::array<double, kPosTagCount> weight{};
    std::array<double, kPosTagCount> total{};
    std::array<std::int64_t, kPosTagCount> stamp{};
  };
  std::map<std::string, Stats> stats;
  std::int64_t clock = 0;

  auto score = [&](const std::vector<std::string>& feats) {
    std::array<double, kPosTagCount> s{};
    for (const std::string& f : feats) {
      auto it = stats.find(f);
      if (it == stats.end()) continue;
      for (std::size_t t = 0; t < kPosTagCount; ++t) s[t] += it->second.weight[t];
    }
    return s;
  };
  auto bump = [&](const std::string& f, std::size_t tag, double delta) {
    Stats& st = stats[f];
    st.total[tag] += static_cast<double>(clock - st.stamp[tag]) * st.weight[tag];
    st.stamp[tag] = clock;
    st.weight[tag] += delta;
  };

  std::vector<TaggedSentence> examples = corpus;
  if (options.fragments) {
    // Phrases are tagged in isolation, so train on short windows as well as
    // whole sentences.
    for (const TaggedSentence& sent : corpus) {
      for (std::size_t len = 1; len <= 4; ++len) {
        for (std::size_t start = 0; start + len <= sent.size(); ++start) {
          TaggedSentence frag(sent.begin() + static_cast<std::ptrdiff_t>(start),
                              sent.begin() + static_cast<std::ptrdiff_t>(start + len));
          if (frag.back().second == PosTag::PUNCT) continue;
          examples.push_back(std::move(frag));
        }
      }
    }
  }

  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  SplitMix64 rng(options.seed);
  for (int iter = 0; iter < options.iterations; ++iter) {
    for (std::size_t idx : order) {
      const TaggedSentence& sent = examples[idx];
      std::vector<std::string> raw;
      std::vector<std::string> norm;
      for (const auto& [w, t] : sent) {
        raw.push_back(w);
        norm.push_back(normalize(w));
      }
      const std::vector<std::string> rule = tagger.rule_tags(raw);
      std::string p1 = "<s>";
      std::string p2 = "<s>";
      for (std::size_t i = 0; i < sent.size(); ++i) {
        ++clock;
        const auto feats = features(raw, norm, i, p1, p2, tagger.lexicon_, rule);
        const auto s = score(feats);
        std::size_t guess = 0;
        for (std::size_t t = 1; t < kPosTagCount; ++t) {
          if (s[t] > s[guess]) guess = t;
        }
        const auto truth = static_cast<std::size_t>(sent[i].second);
        if (guess != truth) {
          for (const std::string& f : feats) {
            bump(f, truth, 1.0);
            bump(f, guess, -1.0);
          }
        }
        p2 = p1;
        p1 = std::string(to_string(static_cast<PosTag>(guess)));
      }
    }
    rng.shuffle(order);
  }

  for (auto& [f, st] : stats) {
    Scores avg{};
    bool nonzero = false;
    for (std::size_t t = 0; t < kPosTagCount; ++t) {
      const double total = st.total[t] + static_cast<double>(clock - st.stamp[t]) * st.weight[t];
      const double a = std::round(total / static_cast<double>(clock) * 1e4) / 1e4;
      avg[t] = static_cast<float>(a);
      nonzero = nonzero || a != 0.0;
    }
    if (nonzero) tagger.weights_.emplace(f, avg);
  }
  return tagger;
}

PosTagger PosTagger::from_json(const nlohmann::json& model) {
  if (model.value("magic", "") != kMagic) {
    throw Error(ErrorCode::kInvalidArgument, "not a phraselette tagger model");
  }
  if (model.value("version", 0) != kModelVersion) {
    throw Error(ErrorCode::kSchemaVersionMismatch,
                "tagger model version " + std::to_string(model.value("version", 0)) + " is not supported");
  }
  TagLexicon lex;
  for (const auto& [word, tag] : model.at("lexicon").items()) {
    auto t = parse_pos_tag(tag.get<std::string>());
    if (!t) throw Error(ErrorCode::kInvalidArgument, "bad tag in model lexicon");
    lex.add(word, *t);
  }
  PosTagger tagger(std::move(lex));
  for (const auto& [feat, row] : model.at("weights").items()) {
    Scores s{};
    for (const auto& [tag, w] : row.items()) {
      auto t = parse_pos_tag(tag);
      if (!t) throw Error(ErrorCode::kInvalidArgument, "bad tag in model weights");
      s[static_cast<std::size_t>(*t)] = w.get<float>();
    }
    tagger.weights_.emplace(feat, s);
  }
  return tagger;
}

PosTagger PosTagger::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open tagger model " + path.string());
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::kInvalidArgument, path.string() + " is not JSON");
  return from_json(j);
}

nlohmann::json PosTagger::to_json() const {
  nlohmann::json weights = nlohmann::json::object();
  for (const auto& [feat, s] : weights_) {
    nlohmann::json row = nlohmann::json::object();
    for (std::size_t t = 0; t < kPosTagCount; ++t) {
      if (s[t] != 0.0f) row[std::string(to_string(static_cast<PosTag>(t)))] = std::round(s[t] * 1e4) / 1e4;
    }
    weights[feat] = row;
  }
  nlohmann::json lex = nlohmann::json::object();
  for (const auto& [word, tag] : lexicon_.entries()) lex[word] = to_string(tag);
  return {{"magic", kMagic}, {"version", kModelVersion}, {"weights", weights}, {"lexicon", lex}};
}

void PosTagger::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << to_json().dump() << '\n';
}

PosTagger PosTagger::load_default() {
  const auto dir = data_dir() / "pos";
  if (std::filesystem::exists(dir / "model.json")) return from_file(dir / "model.json");
  if (std::filesystem::exists(dir / "lexicon.tsv")) return PosTagger(TagLexicon::from_file(dir / "lexicon.tsv"));
  return PosTagger();
}

PosTag PosTagger::predict(const std::vector<std::string>& feats) const {
  Scores s{};
  for (const std::string& f : feats) {
    auto it = weights_.find(f);
    if (it == weights_.end()) continue;
    for (std::size_t t = 0; t < kPosTagCount; ++t) s[t] += it->second[t];
  }
  std::size_t best = 0;
  for (std::size_t t = 1; t < kPosTagCount; ++t) {
    if (s[t] > s[best]) best = t;
  }
  return static_cast<PosTag>(best);
}

PosTag PosTagger::rule_tag(std::string_view word, std::optional<PosTag> prev) const {
  const std::string_view core = core_of(word);
  const std::string lower = text::to_lower_ascii(core);
  if (auto it = closed_class().find(lower); it != closed_class().end()) {
    if (lower == "to" && prev && *prev != PosTag::VERB && *prev != PosTag::AUX) return PosTag::ADP;
    return it->second;
  }
  if (auto tag = lexicon_.lookup(core)) return *tag;
  auto ends = [&](std::string_view s) { return lower.size() > s.size() + 1 && lower.ends_with(s); };
  if (ends("ly")) return PosTag::ADV;
  if (ends("ing") || ends("ed") || ends("ize") || ends("ise") || ends("ify")) return PosTag::VERB;
  if (ends("ous") || ends("ful") || ends("able") || ends("ible") || ends("ive") || ends("al") ||
      ends("ic") || ends("less") || ends("ish")) {
    return PosTag::ADJ;
  }
  if (!core.empty() && core.front() >= 'A' && core.front() <= 'Z' && prev) return PosTag::PROPN;
  return PosTag::NOUN;
}

std::vector<std::string> PosTagger::rule_tags(const std::vector<std::string>& raw) const {
  std::vector<std::string> out;
  for (const std::string& w : raw) {
    const PosTag forced = forced_tag(w);
    out.emplace_back(to_string(forced == PosTag::X ? rule_tag(w, std::nullopt) : forced));
  }
  return out;
}

std::vector<PosTag> PosTagger::tag_words(std::span<const std::string> words) const {
  std::vector<std::string> raw(words.begin(), words.end());
  std::vector<std::string> norm;
  for (const std::string& w : raw) norm.push_back(normalize(w));
  const std::vector<std::string> rule = has_model() ? rule_tags(raw) : std::vector<std::string>{};
  std::vector<PosTag> tags;
  std::string p1 = "<s>";
  std::string p2 = "<s>";
  for (std::size_t i = 0; i < raw.size(); ++i) {
    PosTag tag = forced_tag(raw[i]);
    if (tag == PosTag::X) {
      if (has_model()) {
        tag = predict(features(raw, norm, i, p1, p2, lexicon_, rule));
      } else {
        tag = rule_tag(raw[i], tags.empty() ? std::nullopt : std::optional(tags.back()));
      }
    }
    tags.push_back(tag);
    p2 = p1;
    p1 = std::string(to_string(tag));
  }
  return tags;
}

std::vector<TaggedWord> PosTagger::tag_phrase(std::string_view phrase) const {
  std::vector<std::string> words;
  for (std::string_view w : text::split_words(phrase)) words.emplace_back(w);
  const std::vector<PosTag> tags = tag_words(words);
  std::vector<TaggedWord> out;
  for (std::size_t i = 0; i < words.size(); ++i) out.emplace_back(std::move(words[i]), tags[i]);
  return out;
}

double PosTagger::accuracy(const std::vector<TaggedSentence>& corpus) const {
  std::size_t total = 0;
  std::size_t right = 0;
  for (const TaggedSentence& sent : corpus) {
    std::vector<std::string> words;
    for (const auto& [w, t] : sent) words.push_back(w);
    const auto tags = tag_words(words);
    for (std::size_t i = 0; i < sent.size(); ++i) {
      ++total;
      right += tags[i] == sent[i].second ? 1 : 0;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(right) / static_cast<double>(total);
}

bool tag_sequence_matches(std::span<const PosTag> tags, std::span<const PosTag> pattern,
                          MatchMode mode) {
  if (pattern.empty()) throw Error(ErrorCode::kInvalidArgument, "POS pattern is empty");
  return sequence_matches(tags, pattern, mode);
}

}  // namespace phraselette
