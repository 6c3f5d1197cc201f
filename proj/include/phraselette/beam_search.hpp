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

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phraselette/constraints.hpp"
#include "phraselette/lm_backend.hpp"

namespace phraselette {

struct BeamParams {
  int beam_width = 64;
  int max_tokens = 8;
  int result_cap = 50;
  int min_words = 1;
  std::optional<int> max_words;
  std::optional<RealRange> band;
  bool length_normalize = false;
  // Distribution requests per step run on this many threads.
  int threads = 1;
  // Experimental: when set, live hypotheses whose text fails the predicate
  // are dropped before beam pruning.
  std::function<bool(std::string_view partial_text)> prefix_filter;

  // Throws InvalidArgument.
  void validate() const;
};

struct Hypothesis {
  std::vector<Token> tokens;
  std::vector<double> step_log_probs;
  double log_prob = 0.0;
  bool finished = false;

  // Trimmed surface text.
  std::string text() const;
  double score(bool length_normalize) const;
};

// Ranking order: score descending, then token-id sequence ascending.
bool ranks_before(const Hypothesis& a, const Hypothesis& b, bool length_normalize);

struct SearchResult {
  // Every finished hypothesis, deduplicated by text and ranked, before the
  // band filter and the result cap.
  std::vector<Hypothesis> candidates;
  // candidates after the band filter, capped at result_cap.
  std::vector<Hypothesis> surfaced;
};

// Beam search over continuations of `before`.
//
// Starting from the empty hypothesis, every live hypothesis is extended by
// every token of its next distribution. A hypothesis h finishes when its own
// next distribution offers a token starting with whitespace and h holds
// between min_words and max_words words; its score is the sum of the step
// log-probabilities of h itself. Live hypotheses stay within max_tokens and
// max_words and are pruned to beam_width by the ranking order; finished ones
// are not pruned. Never throws NoHypotheses.
SearchResult beam_search_detailed(std::string_view before, const BeamParams& params,
                                  const LogitBackend& backend);

// Surfaced hypotheses; throws NoHypotheses when none survive.
std::vector<Hypothesis> beam_search(std::string_view before, const BeamParams& params,
                                    const LogitBackend& backend);

// Keeps hypotheses whose log_prob lies in the band, preserving order.
std::vector<Hypothesis> apply_band(const std::vector<Hypothesis>& hyps, const RealRange& band);

struct Histogram {
  std::vector<double> bin_edges;
  std::vector<int> counts;
  int total = 0;

  friend bool operator==(const Histogram&, const Histogram&) = default;
};

// Equal-width bins over [min, max] with the last bin closed on the right.
// When every value is equal the range is widened by 0.5 each way. Throws
// EmptyInput for no values and InvalidArgument for bin_count < 1.
Histogram histogram_of(std::span<const double> values, int bin_count = 20);
Histogram histogram_of(const std::vector<Hypothesis>& hyps, int bin_count = 20);

}  // namespace phraselette
