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

#pragma once

#include <span>
#include <string_view>

#include "phraselette/lm_backend.hpp"
#include "phraselette/phonology.hpp"
#include "phraselette/pos_tagger.hpp"
#include "phraselette/rephrasing.hpp"

namespace phraselette {

// Sets pos on every word token.
void annotate_pos(Rephrasing& r, const PosTagger& tagger);

// Sets phonemes on every word token; words without letters get an empty
// list.
void annotate_phonemes(Rephrasing& r, const Phonology& phonology);

// Spreads model-token log-probabilities over the view tokens and sets
// total_log_prob. `model_tokens` must detokenize to r.text up to
// surrounding whitespace. Each model token is charged to the word containing
// its first non-space character; whitespace-only tokens go to the next word
// (or the last one), so word log-probabilities sum to the total.
void assign_log_probs(Rephrasing& r, std::span<const Token> model_tokens,
                      std::span<const double> step_log_probs);

// Scores the phrase after `before` with the logit backend and assigns the
// result.
void annotate_log_probs(Rephrasing& r, std::string_view before, const LogitBackend& backend);

}  // namespace phraselette
