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

#include "phraselette/phonology.hpp"

#include <fstream>
#include <sstream>

#include "phraselette/error.hpp"
#include "phraselette/paths.hpp"
#include "phraselette/sequence_match.hpp"
#include "phraselette/text.hpp"

namespace phraselette {

std::string_view to_string(PronunciationSource source) {
  return source == PronunciationSource::kLexicon ? "lexicon" : "g2p";
}

std::string_view to_string(SoundMode mode) {
  switch (mode) {
    case SoundMode::kStartsWith: return "startsWith";
    case SoundMode::kEndsWith: return "endsWith";
    case SoundMode::kContains: return "contains";
    case SoundMode::kRhymesWith: return "rhymesWith";
  }
  return "startsWith";
}

std::optional<SoundMode> parse_sound_mode(std::string_view name) {
  for (SoundMode m : {SoundMode::kStartsWith, SoundMode::kEndsWith, SoundMode::kContains,
                      SoundMode::kRhymesWith}) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

int syllable_count(std::span<const Phoneme> phonemes) {
  int n = 0;
  for (const Phoneme& p : phonemes) n += p.is_vowel() ? 1 : 0;
  return n;
}

std::vector<Phoneme> rhyme_suffix(std::span<const Phoneme> reference) {
  auto last_with = [&](auto pred) -> std::optional<std::size_t> {
    for (std::size_t i = reference.size(); i-- > 0;) {
      if (reference[i].is_vowel() && pred(reference[i])) return i;
    }
    return std::nullopt;
  };
  auto start = last_with([](const Phoneme& p) { return p.stress == 1; });
  if (!start) start = last_with([](const Phoneme& p) { return p.stress == 2; });
  if (!start) start = last_with([](const Phoneme&) { return true; });
  return {reference.begin() + static_cast<std::ptrdiff_t>(start.value_or(0)), reference.end()};
}

namespace {

std::vector<Arpabet> symbols(std::span<const Phoneme> phonemes) {
  std::vector<Arpabet> out;
  out.reserve(phonemes.size());
  for (const Phoneme& p : phonemes) out.push_back(p.symbol);
  return out;
}

}  // namespace

bool phonemes_match(std::span<const Phoneme> phrase, const SoundRef& ref) {
  if (ref.phonemes.empty()) throw Error(ErrorCode::kInvalidArgument, "sound reference is empty");
  const std::vector<Arpabet> items = symbols(phrase);
  switch (ref.mode) {
    case SoundMode::kStartsWith:
      return sequence_matches<Arpabet>(items, symbols(ref.phonemes), MatchMode::kStartsWith);
    case SoundMode::kEndsWith:
      return sequence_matches<Arpabet>(items, symbols(ref.phonemes), MatchMode::kEndsWith);
    case SoundMode::kContains:
      return sequence_matches<Arpabet>(items, symbols(ref.phonemes), MatchMode::kContains);
    case SoundMode::kRhymesWith:
      return sequence_matches<Arpabet>(items, symbols(rhyme_suffix(ref.phonemes)),
                                       MatchMode::kEndsWith);
  }
  return false;
}

Lexicon Lexicon::parse(std::string_view content) {
  Lexicon lex;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t nl = content.find('\n', start);
    if (nl == std::string_view::npos) nl = content.size();
    std::string_view line = content.substr(start, nl - start);
    start = nl + 1;
    ++line_no;
    if (line.starts_with(";;;")) continue;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto fields = text::split_words(line);
    if (fields.empty()) continue;
    if (fields.size() < 2) {
      throw Error(ErrorCode::kInvalidArgument, "lexicon line " + std::to_string(line_no) + " has no phonemes");
    }
    std::string_view word = fields[0];
    if (word.size() > 3 && word.back() == ')') {
      if (auto open = word.rfind('('); open != std::string_view::npos && open > 0) word = word.substr(0, open);
    }
    std::vector<Phoneme> phonemes;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      auto p = parse_phoneme(fields[i]);
      if (!p) {
        throw Error(ErrorCode::kInvalidArgument, "lexicon line " + std::to_string(line_no) +
                                                     ": bad phoneme \"" + std::string(fields[i]) + "\"");
      }
      phonemes.push_back(*p);
    }
    lex.entries_[text::to_lower_ascii(word)].push_back(std::move(phonemes));
  }
  return lex;
}

Lexicon Lexicon::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open lexicon " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const std::vector<std::vector<Phoneme>>* Lexicon::lookup(std::string_view word) const {
  auto it = entries_.find(text::to_lower_ascii(word));
  return it == entries_.end() ? nullptr : &it->second;
}

namespace {

bool is_letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_vowel_letter(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

class G2p {
 public:
  explicit G2p(std::string w) : w_(std::move(w)) {}

  std::vector<Phoneme> run() {
    const std::size_t n = w_.size();
    if (n >= 3 && w_[n - 1] == 'e' && !is_vowel_letter(w_[n - 2]) && w_[n - 2] != 'y' &&
        is_vowel_letter(w_[n - 3]) && (n == 3 || !is_vowel_letter(w_[n - 4]))) {
      long_vowel_ = n - 3;
      silent_e_ = n - 1;
    } else if (n >= 2 && w_[n - 1] == 'e' && has_vowel_before(n - 1)) {
      silent_e_ = n - 1;
    }

    std::size_t i = 0;
    while (i < n) i += step(i);

    bool any_vowel = false;
    for (const Phoneme& p : out_) any_vowel = any_vowel || p.is_vowel();
    if (!any_vowel) {
      const auto pos = out_.empty() ? out_.begin() : out_.begin() + 1;
      out_.insert(pos, Phoneme{Arpabet::AH, std::nullopt});
    }
    bool first = true;
    for (Phoneme& p : out_) {
      if (!p.is_vowel()) continue;
      p.stress = first ? 1 : 0;
      first = false;
    }
    return out_;
  }

 private:
  bool has_vowel_before(std::size_t end) const {
    for (std::size_t i = 0; i < end; ++i) {
      if (is_vowel_letter(w_[i]) || (w_[i] == 'y' && i > 0)) return true;
    }
    return false;
  }

  char at(std::size_t i) const { return i < w_.size() ? w_[i] : '\0'; }
  bool next_is(std::size_t i, std::string_view s) const { return w_.compare(i, s.size(), s) == 0; }
  bool soft_follows(std::size_t i) const {
    const char c = at(i + 1);
    return c == 'e' || c == 'i' || c == 'y';
  }

  void emit(std::initializer_list<Arpabet> syms) {
    for (Arpabet s : syms) out_.push_back(Phoneme{s, std::nullopt});
  }

  std::size_t step(std::size_t i) {
    const char c = w_[i];
    if (i == silent_e_) return 1;
    if (i > 0 && c == w_[i - 1] && !is_vowel_letter(c) && c != 'y') return 1;

    struct Rule {
      std::string_view graph;
      std::initializer_list<Arpabet> phones;
    };
    using A = Arpabet;
    if (i == 0 && next_is(i, "kn")) return emit({A::N}), 2;
    if (i == 0 && next_is(i, "wr")) return emit({A::R}), 2;
    if (next_is(i, "tch")) return emit({A::CH}), 3;
    if (next_is(i, "igh")) return emit({A::AY}), 3;
    if (next_is(i, "gh")) {
      if (i == 0) emit({A::G});
      return 2;
    }
    if (next_is(i, "ow") && i + 2 == w_.size()) return emit({A::OW}), 2;
    static const Rule kDigraphs[] = {
        {"ch", {A::CH}}, {"sh", {A::SH}}, {"th", {A::TH}}, {"ph", {A::F}},  {"wh", {A::W}},
        {"ck", {A::K}},  {"ng", {A::NG}}, {"qu", {A::K, A::W}},
        {"ee", {A::IY}}, {"ea", {A::IY}}, {"ie", {A::IY}}, {"oo", {A::UW}}, {"ou", {A::AW}},
        {"ow", {A::AW}}, {"oi", {A::OY}}, {"oy", {A::OY}}, {"ai", {A::EY}}, {"ay", {A::EY}},
        {"au", {A::AO}}, {"aw", {A::AO}}, {"ei", {A::EY}}, {"ey", {A::EY}}, {"oa", {A::OW}},
        {"ue", {A::UW}}, {"ew", {A::UW}},
    };
    for (const Rule& r : kDigraphs) {
      if (next_is(i, r.graph)) return emit(r.phones), r.graph.size();
    }

    const bool r_colored = at(i + 1) == 'r' && !is_vowel_letter(at(i + 2)) && at(i + 2) != 'y';
    switch (c) {
      case 'a':
        if (r_colored) return emit({A::AA, A::R}), 2;
        return emit({i == long_vowel_ ? A::EY : A::AE}), 1;
      case 'e':
        if (r_colored) return emit({A::ER}), 2;
        return emit({i == long_vowel_ ? A::IY : A::EH}), 1;
      case 'i':
        if (r_colored) return emit({A::ER}), 2;
        return emit({i == long_vowel_ ? A::AY : A::IH}), 1;
      case 'o':
        if (r_colored) return emit({A::AO, A::R}), 2;
        return emit({i == long_vowel_ ? A::OW : A::AA}), 1;
      case 'u':
        if (r_colored) return emit({A::ER}), 2;
        return emit({i == long_vowel_ ? A::UW : A::AH}), 1;
      case 'y':
        if (i == 0 || is_vowel_letter(at(i + 1))) return emit({A::Y}), 1;
        if (i + 1 == w_.size()) return emit({has_vowel_before(i) ? A::IY : A::AY}), 1;
        return emit({A::IH}), 1;
      case 'c': return emit({soft_follows(i) ? A::S : A::K}), 1;
      case 'g': return emit({soft_follows(i) ? A::JH : A::G}), 1;
      case 'x': return i == 0 ? (emit({A::Z}), 1) : (emit({A::K, A::S}), 1);
      case 'q': return emit({A::K}), 1;
      case 'j': return emit({A::JH}), 1;
      case 'b': return emit({A::B}), 1;
      case 'd': return emit({A::D}), 1;
      case 'f': return emit({A::F}), 1;
      case 'h': return emit({A::HH}), 1;
      case 'k': return emit({A::K}), 1;
      case 'l': return emit({A::L}), 1;
      case 'm': return emit({A::M}), 1;
      case 'n': return emit({A::N}), 1;
      case 'p': return emit({A::P}), 1;
      case 'r': return emit({A::R}), 1;
      case 's': return emit({A::S}), 1;
      case 't': return emit({A::T}), 1;
      case 'v': return emit({A::V}), 1;
      case 'w': return emit({A::W}), 1;
      case 'z': return emit({A::Z}), 1;
      default: return 1;
    }
  }

  std::string w_;
  std::vector<Phoneme> out_;
  std::size_t long_vowel_ = std::string::npos;
  std::size_t silent_e_ = std::string::npos;
};

}  // namespace

std::vector<Phoneme> g2p(std::string_view word) {
  std::string letters;
  for (char c : word) {
    if (is_letter(c)) letters.push_back(static_cast<char>(c | 0x20));
  }
  if (letters.empty()) {
    throw Error(ErrorCode::kUnpronounceable, "\"" + std::string(word) + "\" has no letters");
  }
  return G2p(std::move(letters)).run();
}

std::vector<std::string> word_pieces(std::string_view s) {
  std::vector<std::string> pieces;
  std::string cur;
  auto flush = [&] {
    while (!cur.empty() && cur.back() == '\'') cur.pop_back();
    std::size_t lead = 0;
    while (lead < cur.size() && cur[lead] == '\'') ++lead;
    cur.erase(0, lead);
    bool has_letter = false;
    for (char c : cur) has_letter = has_letter || is_letter(c);
    if (has_letter) pieces.push_back(text::to_lower_ascii(cur));
    cur.clear();
  };
  for (char c : s) {
    if (is_letter(c) || c == '\'') {
      cur.push_back(c);
    } else {
      flush();
    }
  }
  flush();
  return pieces;
}

Phonology::Phonology(std::shared_ptr<const Lexicon> lexicon) : lexicon_(std::move(lexicon)) {
  if (!lexicon_) throw Error(ErrorCode::kInvalidArgument, "phonology needs a lexicon");
}

Phonology Phonology::load_default() {
  return Phonology(std::make_shared<const Lexicon>(
      Lexicon::from_file(data_dir() / "lexicon" / "cmudict-subset.dict")));
}

Pronunciation Phonology::pronounce(std::string_view word) const {
  const std::vector<std::string> pieces = word_pieces(word);
  if (pieces.empty()) {
    throw Error(ErrorCode::kUnpronounceable, "\"" + std::string(word) + "\" has no letters");
  }
  Pronunciation p;
  p.word = std::string(text::trim(word));
  for (const std::string& piece : pieces) {
    if (const auto* variants = lexicon_->lookup(piece)) {
      const auto& first = variants->front();
      p.phonemes.insert(p.phonemes.end(), first.begin(), first.end());
    } else {
      const auto guessed = g2p(piece);
      p.phonemes.insert(p.phonemes.end(), guessed.begin(), guessed.end());
      p.source = PronunciationSource::kG2p;
    }
  }
  return p;
}

std::vector<std::vector<Phoneme>> Phonology::alternates(std::string_view word) const {
  const std::vector<std::string> pieces = word_pieces(word);
  if (pieces.size() != 1) return {};
  const auto* variants = lexicon_->lookup(pieces.front());
  if (variants == nullptr || variants->size() < 2) return {};
  return {variants->begin() + 1, variants->end()};
}

std::vector<Pronunciation> Phonology::pronounce_phrase(std::string_view phrase) const {
  std::vector<Pronunciation> out;
  for (std::string_view word : text::split_words(phrase)) {
    if (word_pieces(word).empty()) continue;
    out.push_back(pronounce(word));
  }
  if (out.empty()) {
    throw Error(ErrorCode::kUnpronounceable, "\"" + std::string(phrase) + "\" has no letters");
  }
  return out;
}

std::vector<Phoneme> Phonology::phrase_phonemes(std::string_view phrase) const {
  std::vector<Phoneme> out;
  for (const Pronunciation& p : pronounce_phrase(phrase)) {
    out.insert(out.end(), p.phonemes.begin(), p.phonemes.end());
  }
  return out;
}

int Phonology::syllables(std::string_view phrase) const {
  return syllable_count(phrase_phonemes(phrase));
}

double Phonology::match_sound(std::string_view phrase, const SoundRef& ref) const {
  return phonemes_match(phrase_phonemes(phrase), ref) ? 1.0 : 0.0;
}

}  // namespace phraselette
