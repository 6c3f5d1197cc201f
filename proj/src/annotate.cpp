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

#include "phraselette/annotate.hpp"

#include "phraselette/error.hpp"
#include "phraselette/text.hpp"

namespace phraselette {

void annotate_pos(Rephrasing& r, const PosTagger& tagger) {
  std::vector<std::string> words;
  for (const TokenView& t : r.tokens) {
    if (t.is_word()) words.push_back(t.surface);
  }
  const std::vector<PosTag> tags = tagger.tag_words(words);
  std::size_t i = 0;
  for (TokenView& t : r.tokens) {
    if (t.is_word()) t.pos = tags[i++];
  }
}

void annotate_phonemes(Rephrasing& r, const Phonology& phonology) {
  for (TokenView& t : r.tokens) {
    if (!t.is_word()) continue;
    if (word_pieces(t.surface).empty()) {
      t.phonemes = std::vector<Phoneme>{};
    } else {
      t.phonemes = phonology.pronounce(t.surface).phonemes;
    }
  }
}

void assign_log_probs(Rephrasing& r, std::span<const Token> model_tokens,
                      std::span<const double> step_log_probs) {
  if (model_tokens.size() != step_log_probs.size()) {
    throw Error(ErrorCode::kInvalidArgument, "token and log-probability counts differ");
  }
  const std::string full = detokenize(model_tokens);
  const std::string_view trimmed = text::trim(full);
  if (trimmed != r.text) throw Error(ErrorCode::kInvalidArgument, "model tokens do not spell the rephrasing");
  const std::size_t lead = static_cast<std::size_t>(trimmed.data() - full.data());

  // Byte span of each word view token inside r.text.
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  std::vector<std::size_t> word_index;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < r.tokens.size(); ++i) {
    const std::size_t len = r.tokens[i].surface.size();
    if (r.tokens[i].is_word()) {
      spans.emplace_back(offset, offset + len);
      word_index.push_back(i);
    }
    offset += len;
  }
  if (word_index.empty()) return;

  std::vector<double> sums(word_index.size(), 0.0);
  double total = 0.0;
  std::size_t pos = 0;
  for (std::size_t k = 0; k < model_tokens.size(); ++k) {
    const std::string& s = model_tokens[k].surface;
    std::size_t first = std::string::npos;
    for (std::size_t b = 0; b < s.size(); ++b) {
      if (!text::is_space(s[b])) {
        first = pos + b;
        break;
      }
    }
    pos += s.size();
    total += step_log_probs[k];
    std::size_t target = word_index.size() - 1;
    const std::size_t at = first == std::string::npos ? pos : first;
    const std::size_t rel = at < lead ? 0 : at - lead;
    for (std::size_t w = 0; w < spans.size(); ++w) {
      if (rel < spans[w].second) {
        target = w;
        break;
      }
    }
    sums[target] += step_log_probs[k];
  }
  for (std::size_t w = 0; w < word_index.size(); ++w) r.tokens[word_index[w]].log_prob = sums[w];
  r.total_log_prob = total;
}

void annotate_log_probs(Rephrasing& r, std::string_view before, const LogitBackend& backend) {
  const std::vector<Token> context = backend.tokenize(before);
  const std::vector<Token> phrase = backend.tokenize(r.text);
  if (phrase.empty()) return;
  const std::vector<double> steps = backend.step_log_probs(token_ids(phrase), token_ids(context));
  assign_log_probs(r, phrase, steps);
}

}  // namespace phraselette
