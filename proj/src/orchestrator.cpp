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

#include "phraselette/orchestrator.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>

#include "phraselette/annotate.hpp"
#include "phraselette/error.hpp"
#include "phraselette/text.hpp"

namespace phraselette {

std::string_view to_string(WellRunState state) {
  switch (state) {
    case WellRunState::kPending: return "pending";
    case WellRunState::kDone: return "done";
    case WellRunState::kFailed: return "failed";
    case WellRunState::kStale: return "stale";
  }
  return "pending";
}

std::string well_color(std::string_view well_id) {
  static constexpr std::array<const char*, 10> kPalette = {
      "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
      "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
  };
  return kPalette[text::fnv1a(well_id) % kPalette.size()];
}

std::set<ViewKind> active_views(const WellRegistry& registry, const std::vector<WellConfig>& active) {
  std::set<ViewKind> views;
  for (const WellConfig& cfg : active) {
    if (const WellDescriptor* d = registry.find(cfg.kind); d && d->view) views.insert(*d->view);
  }
  return views;
}

namespace {

bool try_annotate(Rephrasing& r, AnnotationKind kind, const WellServices& services,
                  std::string_view before) {
  try {
    switch (kind) {
      case AnnotationKind::kPos:
        if (!services.tagger) return false;
        annotate_pos(r, *services.tagger);
        return true;
      case AnnotationKind::kPhonemes:
        if (!services.phonology) return false;
        annotate_phonemes(r, *services.phonology);
        return true;
      case AnnotationKind::kLogProb:
        if (r.total_log_prob) return true;
        if (!services.logit) return false;
        annotate_log_probs(r, before, *services.logit);
        return r.total_log_prob.has_value();
    }
  } catch (const Error&) {
    return false;
  }
  return false;
}

}  // namespace

void annotate_and_score(std::vector<Rephrasing>& pool, const std::vector<Constraint>& constraints,
                        const std::set<ViewKind>& views, const WellServices& services,
                        std::string_view before) {
  for (Rephrasing& r : pool) {
    if (views.contains(ViewKind::kPos)) try_annotate(r, AnnotationKind::kPos, services, before);
    if (views.contains(ViewKind::kPhonemes)) try_annotate(r, AnnotationKind::kPhonemes, services, before);
    if (views.contains(ViewKind::kLogProb)) try_annotate(r, AnnotationKind::kLogProb, services, before);

    ScoreSummary summary;
    for (const Constraint& c : constraints) {
      double score = 0.0;
      try {
        score = score_constraint(c, r);
      } catch (const MissingAnnotation& missing) {
        Rephrasing scratch = r;
        if (try_annotate(scratch, missing.kind(), services, before)) {
          try {
            score = score_constraint(c, scratch);
          } catch (const MissingAnnotation&) {
            score = 0.0;
          }
          if (missing.kind() == AnnotationKind::kLogProb) r.total_log_prob = scratch.total_log_prob;
        }
      }
      summary.scores[c.id] = score;
    }
    summary.overall = mean_score(summary.scores);
    summary.fully_matched =
        std::ranges::all_of(summary.scores, [](const auto& kv) { return kv.second >= 1.0; });
    apply_scores(r, summary);
  }
}

namespace {

bool better_entry(const Rephrasing& a, const Rephrasing& b) {
  if (a.overall_score != b.overall_score) return a.overall_score > b.overall_score;
  if (a.internal_score != b.internal_score) return a.internal_score > b.internal_score;
  return a.well_id < b.well_id;
}

}  // namespace

std::vector<Rephrasing> sort_and_dedupe(std::vector<Rephrasing> pool) {
  std::unordered_map<std::string, std::size_t> index;
  std::vector<Rephrasing> out;
  for (Rephrasing& r : pool) {
    auto [it, inserted] = index.emplace(r.text, out.size());
    if (inserted) {
      out.push_back(std::move(r));
      continue;
    }
    Rephrasing& kept = out[it->second];
    std::vector<std::string> provenance = kept.provenance;
    provenance.insert(provenance.end(), r.provenance.begin(), r.provenance.end());
    if (better_entry(r, kept)) kept = std::move(r);
    kept.provenance = std::move(provenance);
  }
  for (Rephrasing& r : out) {
    std::ranges::sort(r.provenance);
    auto dup = std::ranges::unique(r.provenance);
    r.provenance.erase(dup.begin(), dup.end());
  }
  std::ranges::sort(out, [](const Rephrasing& a, const Rephrasing& b) {
    if (a.overall_score != b.overall_score) return a.overall_score > b.overall_score;
    if (a.internal_score != b.internal_score) return a.internal_score > b.internal_score;
    return a.text < b.text;
  });
  return out;
}

Orchestrator::Orchestrator(std::shared_ptr<const WellRegistry> registry, WellServices services)
    : registry_(std::move(registry)), services_(std::move(services)) {
  if (!registry_) throw Error(ErrorCode::kInvalidArgument, "orchestrator needs a well registry");
}

std::vector<Constraint> Orchestrator::collect_constraints(const std::vector<std::unique_ptr<Well>>& wells,
                                                          const InletContext& ctx,
                                                          const std::vector<Constraint>& extra) const {
  std::vector<Constraint> out;
  for (const auto& well : wells) {
    try {
      for (Constraint& c : well->constraints(ctx)) out.push_back(std::move(c));
    } catch (const Error&) {
      // The well reports the same problem when it runs.
    }
  }
  for (const Constraint& c : extra) {
    c.validate();
    out.push_back(c);
  }
  return out;
}

std::shared_ptr<RunJob> Orchestrator::start(JobRequest request) const {
  auto job = std::make_shared<RunJob>(request.job_id, request.context, request.is_current);
  launch(*job, request.active, request.run_ids, request.extra_constraints);
  return job;
}

void Orchestrator::extend(RunJob& job, const std::vector<WellConfig>& active,
                          const std::vector<std::string>& run_ids,
                          const std::vector<Constraint>& extra_constraints) const {
  launch(job, active, run_ids, extra_constraints);
}

void Orchestrator::launch(RunJob& job, const std::vector<WellConfig>& active,
                          const std::vector<std::string>& run_ids,
                          const std::vector<Constraint>& extra_constraints) const {
  if (run_ids.empty()) throw Error(ErrorCode::kNoActiveWells, "no wells to run");
  std::vector<std::unique_ptr<Well>> wells;
  std::map<std::string, std::size_t> by_id;
  for (const WellConfig& cfg : active) {
    by_id[cfg.well_id] = wells.size();
    wells.push_back(registry_->create(cfg, services_));
  }
  for (const std::string& id : run_ids) {
    if (!by_id.contains(id)) throw Error(ErrorCode::kUnknownWell, "well " + id + " is not active");
  }
  const std::vector<Constraint> constraints = collect_constraints(wells, job.context_, extra_constraints);
  const std::set<ViewKind> views = active_views(*registry_, active);

  std::vector<Rephrasing> existing;
  {
    std::lock_guard lock(job.mutex_);
    job.constraints_ = constraints;
    job.views_ = views;
    existing = job.raw_;
    for (const std::string& id : run_ids) job.status_[id] = WellStatus{};
  }
  if (!existing.empty()) {
    annotate_and_score(existing, constraints, views, services_, job.context_.slice.before);
    std::lock_guard lock(job.mutex_);
    for (std::size_t i = 0; i < existing.size() && i < job.raw_.size(); ++i) job.raw_[i] = existing[i];
  }

  std::lock_guard lock(job.mutex_);
  for (const std::string& id : run_ids) {
    std::shared_ptr<const Well> well = std::move(wells[by_id.at(id)]);
    const WellDescriptor& desc = registry_->get(well->config().kind);
    const Advice advice = advice_for_all(constraints, desc.advice_target);
    job.threads_.emplace_back([services = services_, &job, well, advice] {
      const InletContext& ctx = job.context_;
      WellStatus status{WellRunState::kDone, {}};
      WellOutput out;
      try {
        out = well->run(ctx, advice);
      } catch (const Error& e) {
        status = {WellRunState::kFailed, std::string(to_string(e.code())) + ": " + e.what()};
      } catch (const std::exception& e) {
        status = {WellRunState::kFailed, std::string("Internal: ") + e.what()};
      }
      if (status.state == WellRunState::kDone && job.is_current_ && !job.is_current_(ctx.generation)) {
        status = {WellRunState::kStale, "inlet moved to a newer generation"};
      }
      if (status.state != WellRunState::kDone) {
        std::lock_guard guard(job.mutex_);
        job.status_[well->id()] = status;
        job.cv_.notify_all();
        return;
      }
      for (Rephrasing& r : out.rephrasings) {
        r.well_id = well->id();
        r.generation = ctx.generation;
        if (r.provenance.empty()) r.provenance = {well->id()};
      }
      std::vector<Constraint> cs;
      std::set<ViewKind> vs;
      {
        std::lock_guard guard(job.mutex_);
        cs = job.constraints_;
        vs = job.views_;
      }
      annotate_and_score(out.rephrasings, cs, vs, services, ctx.slice.before);
      std::lock_guard guard(job.mutex_);
      if (cs != job.constraints_ || vs != job.views_) {
        annotate_and_score(out.rephrasings, job.constraints_, job.views_, services, ctx.slice.before);
      }
      for (Rephrasing& r : out.rephrasings) job.raw_.push_back(std::move(r));
      job.insights_[well->id()] = std::move(out.insights);
      job.status_[well->id()] = status;
      job.cv_.notify_all();
    });
  }
}

RunJob::RunJob(std::string id, InletContext context, std::function<bool(std::int64_t)> is_current)
    : id_(std::move(id)), context_(std::move(context)), is_current_(std::move(is_current)) {}

RunJob::~RunJob() {
  std::vector<std::jthread> threads;
  {
    std::lock_guard lock(mutex_);
    threads = std::move(threads_);
  }
  threads.clear();
}

bool RunJob::complete() const {
  std::lock_guard lock(mutex_);
  return std::ranges::none_of(status_, [](const auto& kv) { return kv.second.state == WellRunState::kPending; });
}

bool RunJob::wait(std::chrono::milliseconds timeout) const {
  std::unique_lock lock(mutex_);
  auto done = [&] {
    return std::ranges::none_of(status_, [](const auto& kv) { return kv.second.state == WellRunState::kPending; });
  };
  if (timeout == std::chrono::milliseconds::max()) {
    cv_.wait(lock, done);
    return true;
  }
  return cv_.wait_for(lock, timeout, done);
}

std::vector<Rephrasing> RunJob::raw_pool() const {
  std::lock_guard lock(mutex_);
  return raw_;
}

JobSnapshot RunJob::snapshot(std::size_t cursor) const {
  JobSnapshot s;
  std::vector<Rephrasing> raw;
  {
    std::lock_guard lock(mutex_);
    s.wells = status_;
    raw = raw_;
    for (const auto& [well, list] : insights_) s.insights.insert(s.insights.end(), list.begin(), list.end());
    s.constraints = constraints_;
  }
  s.job_id = id_;
  s.inlet_id = context_.inlet_id;
  s.generation = context_.generation;
  s.complete = std::ranges::none_of(s.wells, [](const auto& kv) { return kv.second.state == WellRunState::kPending; });
  s.next_cursor = raw.size();
  if (cursor < raw.size()) {
    s.new_rephrasings.assign(raw.begin() + static_cast<std::ptrdiff_t>(cursor), raw.end());
  }
  s.rephrasings = sort_and_dedupe(std::move(raw));
  return s;
}

}  // namespace phraselette
