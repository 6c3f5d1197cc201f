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

#include "phraselette/rephrasing.hpp"

#include "phraselette/error.hpp"
#include "phraselette/text.hpp"

namespace phraselette {

bool TokenView::is_word() const { return !surface.empty() && !text::is_all_space(surface); }

std::vector<TokenView> view_tokens(std::string_view s) {
  std::vector<TokenView> out;
  for (std::string_view run : text::split_runs(s)) {
    TokenView t;
    t.surface = std::string(run);
    out.push_back(std::move(t));
  }
  return out;
}

std::string Rephrasing::id() const { return "r" + text::hex(text::fnv1a(text), 12); }

Rephrasing make_rephrasing(std::string_view raw, std::string well_id, double internal_score,
                           std::int64_t generation) {
  const std::string_view trimmed = text::trim(raw);
  if (trimmed.empty()) throw Error(ErrorCode::kInvalidArgument, "rephrasing text is empty");
  Rephrasing r;
  r.text = std::string(trimmed);
  r.tokens = view_tokens(r.text);
  r.provenance = {well_id};
  r.well_id = std::move(well_id);
  r.internal_score = internal_score;
  r.generation = generation;
  return r;
}

double mean_score(const std::map<std::string, double>& scores) {
  if (scores.empty()) return 1.0;
  double sum = 0.0;
  for (const auto& [id, s] : scores) sum += s;
  return sum / static_cast<double>(scores.size());
}

}  // namespace phraselette
