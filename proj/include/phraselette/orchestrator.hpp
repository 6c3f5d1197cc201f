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

#include <chrono>
#include <condition_variable>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "phraselette/constraints.hpp"
#include "phraselette/wells.hpp"

namespace phraselette {

enum class WellRunState { kPending, kDone, kFailed, kStale };

std::string_view to_string(WellRunState state);

struct WellStatus {
  WellRunState state = WellRunState::kPending;
  std::string reason;  // error code and message for failed wells

  friend bool operator==(const WellStatus&, const WellStatus&) = default;
};

// Stable provenance color for a well id, shared by the CLI and the UI.
std::string well_color(std::string_view well_id);

// Which views the active wells contribute.
std::set<ViewKind> active_views(const WellRegistry& registry, const std::vector<WellConfig>& active);

// Annotates each rephrasing for the active views and for whatever the
// constraints need, then scores it. Annotation failures leave the field
// unset; a constraint that still cannot be evaluated scores 0.
void annotate_and_score(std::vector<Rephrasing>& pool, const std::vector<Constraint>& constraints,
                        const std::set<ViewKind>& views, const WellServices& services,
                        std::string_view before);

// Collapses exact-text duplicates, keeping the best entry (overall score,
// then internal score, then well id) and the union of provenance, and orders
// by overall score desc, internal score desc, text ascending.
std::vector<Rephrasing> sort_and_dedupe(std::vector<Rephrasing> pool);

struct JobSnapshot {
  std::string job_id;
  std::string inlet_id;
  std::int64_t generation = 0;
  std::map<std::string, WellStatus> wells;
  std::vector<Rephrasing> rephrasings;      // sorted and deduplicated
  std::vector<Rephrasing> new_rephrasings;  // raw arrivals since the cursor
  std::size_t next_cursor = 0;
  std::vector<Insight> insights;            // ordered by well id
  std::vector<Constraint> constraints;
  bool complete = false;
};

struct JobRequest {
  std::string job_id;
  InletContext context;
  // Every active well: decides views and constraints.
  std::vector<WellConfig> active;
  // Wells to run now; each must appear in `active`.
  std::vector<std::string> run_ids;
  // Constraints supplied directly (for example through the API).
  std::vector<Constraint> extra_constraints;
  // Returns false once the inlet has moved past the job's generation.
  std::function<bool(std::int64_t generation)> is_current;
};

class RunJob;

// Launches wells on their own threads and pools their results.
class Orchestrator {
 public:
  Orchestrator(std::shared_ptr<const WellRegistry> registry, WellServices services);

  // Throws NoActiveWells when nothing is to run, UnknownWell for ids that
  // are not active, InvalidArgument for bad configs.
  std::shared_ptr<RunJob> start(JobRequest request) const;

  // Runs more wells inside an existing job (same generation). The constraint
  // set is recomputed and the existing pool rescored.
  void extend(RunJob& job, const std::vector<WellConfig>& active,
              const std::vector<std::string>& run_ids,
              const std::vector<Constraint>& extra_constraints) const;

  const WellRegistry& registry() const { return *registry_; }
  const WellServices& services() const { return services_; }

 private:
  std::vector<Constraint> collect_constraints(const std::vector<std::unique_ptr<Well>>& wells,
                                              const InletContext& ctx,
                                              const std::vector<Constraint>& extra) const;
  void launch(RunJob& job, const std::vector<WellConfig>& active,
              const std::vector<std::string>& run_ids,
              const std::vector<Constraint>& extra_constraints) const;

  std::shared_ptr<const WellRegistry> registry_;
  WellServices services_;
};

class RunJob {
 public:
  RunJob(std::string id, InletContext context, std::function<bool(std::int64_t)> is_current);
  ~RunJob();

  RunJob(const RunJob&) = delete;
  RunJob& operator=(const RunJob&) = delete;

  const std::string& id() const { return id_; }
  const std::string& inlet_id() const { return context_.inlet_id; }
  std::int64_t generation() const { return context_.generation; }
  const InletContext& context() const { return context_; }

  JobSnapshot snapshot(std::size_t cursor = 0) const;
  bool complete() const;

  // Blocks until every well has settled or the timeout passes; returns
  // complete().
  bool wait(std::chrono::milliseconds timeout = std::chrono::milliseconds::max()) const;

  // Every raw arrival, in arrival order.
  std::vector<Rephrasing> raw_pool() const;

 private:
  friend class Orchestrator;

  std::string id_;
  InletContext context_;
  std::function<bool(std::int64_t)> is_current_;

  mutable std::mutex mutex_;
  mutable std::condition_variable cv_;
  std::map<std::string, WellStatus> status_;
  std::vector<Rephrasing> raw_;
  std::map<std::string, std::vector<Insight>> insights_;
  std::vector<Constraint> constraints_;
  std::set<ViewKind> views_;
  std::vector<std::jthread> threads_;
};

}  // namespace phraselette
