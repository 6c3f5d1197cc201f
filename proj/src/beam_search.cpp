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

#include "phraselette/beam_search.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <unordered_map>

#include "phraselette/error.hpp"
#include "phraselette/text.hpp"

namespace phraselette {

void BeamParams::validate() const {
  if (beam_width < 1) throw Error(ErrorCode::kInvalidArgument, "beam_width must be >= 1");
  if (max_tokens < 1) throw Error(ErrorCode::kInvalidArgument, "max_tokens must be >= 1");
  if (result_cap < 1) throw Error(ErrorCode::kInvalidArgument, "result_cap must be >= 1");
  if (min_words < 1) throw Error(ErrorCode::kInvalidArgument, "min_words must be >= 1");
  if (max_words && *max_words < min_words) {
    throw Error(ErrorCode::kInvalidArgument, "max_words must be >= min_words");
  }
  if (band && (band->min > band->max || std::isnan(band->min) || std::isnan(band->max))) {
    throw Error(ErrorCode::kInvalidArgument, "band min must not exceed band max");
  }
  if (threads < 1) throw Error(ErrorCode::kInvalidArgument, "threads must be >= 1");
}

std::string Hypothesis::text() const { return std::string(text::trim(detokenize(tokens))); }

double Hypothesis::score(bool length_normalize) const {
  if (!length_normalize || tokens.empty()) return log_prob;
  return log_prob / static_cast<double>(tokens.size());
}

bool ranks_before(const Hypothesis& a, const Hypothesis& b, bool length_normalize) {
  const double sa = a.score(length_normalize);
  const double sb = b.score(length_normalize);
  if (sa != sb) return sa > sb;
  return std::ranges::lexicographical_compare(a.tokens, b.tokens, std::less<>{},
                                              &Token::id, &Token::id);
}

namespace {

std::vector<LogitResult> fetch_all(const std::vector<Hypothesis>& live,
                                   const std::vector<TokenId>& context, const LogitBackend& backend,
                                   int threads) {
  std::vector<LogitResult> out(live.size());
  auto fetch = [&](std::size_t i) {
    std::vector<TokenId> prefix = context;
    for (const Token& t : live[i].tokens) prefix.push_back(t.id);
    out[i] = backend.next_distribution(prefix);
  };
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), live.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < live.size(); ++i) fetch(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < live.size(); i += workers) fetch(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

bool offers_boundary(const LogitResult& dist) {
  return std::ranges::any_of(dist.entries, [](const LogitEntry& e) {
    return text::starts_with_space(e.token.surface);
  });
}

}  // namespace

SearchResult beam_search_detailed(std::string_view before, const BeamParams& params,
                                  const LogitBackend& backend) {
  params.validate();
  const std::vector<TokenId> context = token_ids(backend.tokenize(before));

  std::vector<Hypothesis> live(1);
  std::vector<Hypothesis> finished;
  for (int step = 0; step <= params.max_tokens; ++step) {
    if (live.empty()) break;
    const std::vector<LogitResult> dists = fetch_all(live, context, backend, params.threads);

    std::vector<Hypothesis> next;
    for (std::size_t i = 0; i < live.size(); ++i) {
      const Hypothesis& h = live[i];
      if (!h.tokens.empty()) {
        const auto words = static_cast<int>(text::word_count(detokenize(h.tokens)));
        if (words >= params.min_words && (!params.max_words || words <= *params.max_words) &&
            offers_boundary(dists[i])) {
          Hypothesis done = h;
          done.finished = true;
          finished.push_back(std::move(done));
        }
      }
      if (step == params.max_tokens) continue;
      for (const LogitEntry& e : dists[i].entries) {
        Hypothesis ext = h;
        ext.tokens.push_back(e.token);
        ext.step_log_probs.push_back(e.log_prob);
        ext.log_prob += e.log_prob;
        const std::string partial = detokenize(ext.tokens);
        if (params.max_words && static_cast<int>(text::word_count(partial)) > *params.max_words) continue;
        if (params.prefix_filter && !params.prefix_filter(partial)) continue;
        next.push_back(std::move(ext));
      }
    }
    auto order = [&](const Hypothesis& a, const Hypothesis& b) {
      return ranks_before(a, b, params.length_normalize);
    };
    const auto keep = std::min(next.size(), static_cast<std::size_t>(params.beam_width));
    std::partial_sort(next.begin(), next.begin() + static_cast<std::ptrdiff_t>(keep), next.end(), order);
    next.resize(keep);
    live = std::move(next);
  }

  std::ranges::sort(finished, [&](const Hypothesis& a, const Hypothesis& b) {
    return ranks_before(a, b, params.length_normalize);
  });
  SearchResult result;
  std::unordered_map<std::string, bool> seen;
  for (Hypothesis& h : finished) {
    if (seen.emplace(h.text(), true).second) result.candidates.push_back(std::move(h));
  }
  for (const Hypothesis& h : result.candidates) {
    if (static_cast<int>(result.surfaced.size()) >= params.result_cap) break;
    if (params.band && !params.band->contains(h.log_prob)) continue;
    result.surfaced.push_back(h);
  }
  return result;
}

std::vector<Hypothesis> beam_search(std::string_view before, const BeamParams& params,
                                    const LogitBackend& backend) {
  SearchResult r = beam_search_detailed(before, params, backend);
  if (r.surfaced.empty()) {
    throw Error(ErrorCode::kNoHypotheses, params.band ? "no hypothesis falls inside the band"
                                                      : "the search produced no hypotheses");
  }
  return std::move(r.surfaced);
}

std::vector<Hypothesis> apply_band(const std::vector<Hypothesis>& hyps, const RealRange& band) {
  if (band.min > band.max) throw Error(ErrorCode::kInvalidArgument, "band min must not exceed band max");
  std::vector<Hypothesis> out;
  for (const Hypothesis& h : hyps) {
    if (band.contains(h.log_prob)) out.push_back(h);
  }
  return out;
}

Histogram histogram_of(std::span<const double> values, int bin_count) {
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "histogram of no values");
  if (bin_count < 1) throw Error(ErrorCode::kInvalidArgument, "bin count must be >= 1");
  auto [lo_it, hi_it] = std::ranges::minmax_element(values);
  double lo = *lo_it;
  double hi = *hi_it;
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  Histogram h;
  const double width = (hi - lo) / bin_count;
  for (int i = 0; i < bin_count; ++i) h.bin_edges.push_back(lo + width * i);
  h.bin_edges.push_back(hi);
  h.counts.assign(static_cast<std::size_t>(bin_count), 0);
  for (double v : values) {
    auto it = std::upper_bound(h.bin_edges.begin(), h.bin_edges.end(), v);
    auto idx = static_cast<std::ptrdiff_t>(it - h.bin_edges.begin()) - 1;
    idx = std::clamp<std::ptrdiff_t>(idx, 0, bin_count - 1);
    ++h.counts[static_cast<std::size_t>(idx)];
  }
  h.total = static_cast<int>(values.size());
  return h;
}

Histogram histogram_of(const std::vector<Hypothesis>& hyps, int bin_count) {
  std::vector<double> values;
  for (const Hypothesis& h : hyps) values.push_back(h.log_prob);
  return histogram_of(values, bin_count);
}

}  // namespace phraselette
