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

#include "phraselette/batch.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "phraselette/orchestrator.hpp"
#include "phraselette/serialize.hpp"
#include "phraselette/text.hpp"

namespace phraselette::batch {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::kInvalidArgument, what); }

template <class T>
T parse_number(std::string_view s, const std::string& what) {
  s = text::trim(s);
  T value{};
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (s.empty() || ec != std::errc() || ptr != last) bad("cannot read " + what + " from \"" + std::string(s) + "\"");
  return value;
}

IntRange parse_count_range(std::string_view s, const std::string& what) {
  const auto dash = s.find('-');
  if (dash == std::string_view::npos) {
    const int n = parse_number<int>(s, what);
    return {n, n};
  }
  return {parse_number<int>(s.substr(0, dash), what), parse_number<int>(s.substr(dash + 1), what)};
}

// Splits "VERB ADV:exact" into pattern and optional trailing mode.
std::pair<std::string_view, std::string_view> split_mode(std::string_view body) {
  const auto colon = body.rfind(':');
  if (colon == std::string_view::npos) return {body, {}};
  return {body.substr(0, colon), body.substr(colon + 1)};
}

bool is_backend_code(ErrorCode code) {
  return code == ErrorCode::kBackendUnavailable || code == ErrorCode::kContextTooLong ||
         code == ErrorCode::kMalformedResponse;
}

}  // namespace

int exit_code_for(ErrorCode code) { return is_backend_code(code) ? kExitBackend : kExitValidation; }

CharRange parse_inlet(std::string_view arg) {
  const auto colon = arg.find(':');
  if (colon == std::string_view::npos) bad("inlet must look like START:END, got \"" + std::string(arg) + "\"");
  const auto start = parse_number<long long>(arg.substr(0, colon), "inlet start");
  const auto end = parse_number<long long>(arg.substr(colon + 1), "inlet end");
  if (start < 0 || end < 0) bad("inlet offsets must not be negative");
  if (end <= start) {
    throw Error(ErrorCode::kEmptyRange, "inlet " + std::string(arg) + " is empty or reversed");
  }
  return {static_cast<std::size_t>(start), static_cast<std::size_t>(end)};
}

Constraint parse_constraint(std::string_view arg, const std::string& id) {
  const auto colon = arg.find(':');
  if (colon == std::string_view::npos) bad("constraint must look like KIND:VALUE, got \"" + std::string(arg) + "\"");
  const std::string kind = text::to_lower_ascii(text::trim(arg.substr(0, colon)));
  const std::string_view body = arg.substr(colon + 1);
  const std::string source = "cli";
  if (kind == "words") {
    const IntRange r = parse_count_range(body, "word count");
    return word_count_constraint(id, source, r.min, r.max);
  }
  if (kind == "syllables") {
    const IntRange r = parse_count_range(body, "syllable count");
    return syllable_constraint(id, source, r.min, r.max);
  }
  if (kind == "pos") {
    auto [pattern, mode_name] = split_mode(body);
    MatchMode mode = MatchMode::kExact;
    if (!mode_name.empty()) {
      auto m = parse_match_mode(text::trim(mode_name));
      if (!m) bad("unknown match mode \"" + std::string(mode_name) + "\"");
      mode = *m;
    }
    return pos_constraint(id, source, parse_pos_tags(pattern), mode);
  }
  if (kind == "sound") {
    auto [pattern, mode_name] = split_mode(body);
    SoundMode mode = SoundMode::kStartsWith;
    if (!mode_name.empty()) {
      auto m = parse_sound_mode(text::trim(mode_name));
      if (!m) bad("unknown sound mode \"" + std::string(mode_name) + "\"");
      mode = *m;
    }
    return sound_constraint(id, source, SoundRef{parse_phonemes(pattern), mode});
  }
  if (kind == "band") {
    const auto dots = body.find("..");
    if (dots == std::string_view::npos) bad("band must look like MIN..MAX");
    const std::string_view lo = text::trim(body.substr(0, dots));
    const double min = lo.empty() ? -std::numeric_limits<double>::infinity() : parse_number<double>(lo, "band minimum");
    const double max = parse_number<double>(body.substr(dots + 2), "band maximum");
    return band_constraint(id, source, min, max);
  }
  bad("unknown constraint kind \"" + kind + "\"");
}

WellConfig parse_well(std::string_view arg, const std::string& well_id) {
  WellConfig cfg;
  cfg.well_id = well_id;
  const auto colon = arg.find(':');
  cfg.kind = text::to_lower_ascii(text::trim(arg.substr(0, colon)));
  if (cfg.kind.empty()) bad("well arg \"" + std::string(arg) + "\" has no kind");
  if (colon != std::string_view::npos) {
    const std::string_view desc = text::trim(arg.substr(colon + 1));
    if (!desc.empty()) cfg.prompt_description = std::string(desc);
  }
  return cfg;
}

Result run(const Request& request, std::shared_ptr<const WellRegistry> registry, const WellServices& services) {
  if (request.wells.empty()) throw Error(ErrorCode::kNoActiveWells, "no wells given");
  Document doc("cli", request.text);
  const Inlet& inlet = doc.create_inlet(request.inlet);
  const std::string inlet_id = inlet.id;

  std::vector<WellConfig> wells;
  std::map<std::string, std::size_t> per_kind;
  for (std::size_t i = 0; i < request.wells.size(); ++i) {
    WellConfig cfg = parse_well(request.wells[i], "");
    const std::size_t n = per_kind[cfg.kind]++;
    cfg.well_id = cfg.kind + "-" + std::to_string(n + 1);
    const WellDescriptor& d = registry->get(cfg.kind);
    if (!cfg.prompt_description && d.requires_description && services.presets &&
        !services.presets->presets(cfg.kind).empty()) {
      cfg.prompt_description = services.presets->cycle(cfg.kind, n);
    }
    if (auto it = request.parameters.find(cfg.kind); it != request.parameters.end()) {
      if (!it->second.is_object()) bad("parameters for " + cfg.kind + " must be a JSON object");
      cfg.parameters = it->second;
    }
    registry->validate(cfg);
    wells.push_back(std::move(cfg));
  }

  std::vector<Constraint> constraints;
  std::map<std::string, int> per_constraint;
  for (const std::string& arg : request.constraints) {
    const std::string kind = text::to_lower_ascii(text::trim(arg.substr(0, arg.find(':'))));
    const int n = ++per_constraint[kind];
    constraints.push_back(parse_constraint(arg, "cli." + kind + (n > 1 ? std::to_string(n) : "")));
  }

  const std::int64_t generation = doc.begin_run(inlet_id);
  JobRequest job_request;
  job_request.job_id = "job-1";
  job_request.context = {doc.id(), inlet_id, generation, doc.slice_context(inlet_id), request.seed};
  job_request.active = wells;
  for (const WellConfig& w : wells) job_request.run_ids.push_back(w.well_id);
  job_request.extra_constraints = constraints;

  Orchestrator orchestrator(std::move(registry), services);
  auto job = orchestrator.start(std::move(job_request));
  if (!job->wait(request.timeout)) {
    throw Error(ErrorCode::kBackendUnavailable, "wells did not finish within the timeout");
  }
  const JobSnapshot snapshot = job->snapshot();

  Result result;
  for (const auto& [id, status] : snapshot.wells) {
    if (status.state != WellRunState::kFailed) continue;
    for (ErrorCode code : {ErrorCode::kBackendUnavailable, ErrorCode::kContextTooLong, ErrorCode::kMalformedResponse}) {
      if (status.reason.starts_with(std::string(to_string(code)) + ":")) result.exit_code = kExitBackend;
    }
  }
  json job_json = wire::encode(snapshot);
  job_json.erase("newRephrasings");
  job_json.erase("nextCursor");
  json well_list = json::array();
  for (const WellConfig& w : wells) well_list.push_back(wire::encode(w));
  result.output = {{"text", request.text},
                   {"inlet", {{"id", inlet_id},
                              {"start", request.inlet.start},
                              {"end", request.inlet.end},
                              {"selection", doc.selection(inlet_id)}}},
                   {"wells", well_list},
                   {"job", job_json}};
  return result;
}

std::string render_table(const json& output) {
  std::ostringstream out;
  const json& job = output.at("job");
  out << "inlet " << output.at("inlet").at("start") << ":" << output.at("inlet").at("end") << " \""
      << output.at("inlet").at("selection").get<std::string>() << "\"\n";
  for (const auto& [id, state] : job.at("wells").items()) {
    out << "  " << id << ": " << state.get<std::string>();
    if (job.at("failures").contains(id)) out << " (" << job.at("failures").at(id).get<std::string>() << ")";
    out << "\n";
  }
  out << "\n" << std::left << std::setw(5) << "#" << std::setw(8) << "score" << std::setw(10) << "logprob"
      << std::setw(16) << "well" << "text\n";
  int rank = 1;
  for (const json& r : job.at("rephrasings")) {
    std::ostringstream score;
    score << std::fixed << std::setprecision(3) << r.at("overallScore").get<double>();
    std::ostringstream lp;
    if (r.contains("totalLogProb")) lp << std::fixed << std::setprecision(2) << r.at("totalLogProb").get<double>();
    out << std::left << std::setw(5) << rank++ << std::setw(8) << score.str() << std::setw(10) << lp.str()
        << std::setw(16) << r.at("wellId").get<std::string>() << r.at("text").get<std::string>() << "\n";
  }
  for (const json& i : job.at("insights")) {
    out << "\n[" << i.at("kind").get<std::string>() << " from " << i.at("wellId").get<std::string>() << "]\n";
    const json& body = i.at("body");
    if (body.contains("bullets")) {
      for (const json& b : body.at("bullets")) out << "  - " << b.get<std::string>() << "\n";
    } else if (body.contains("text")) {
      out << "  " << body.at("text").get<std::string>() << "\n";
    } else {
      out << "  " << body.dump() << "\n";
    }
  }
  return out.str();
}

}  // namespace phraselette::batch
