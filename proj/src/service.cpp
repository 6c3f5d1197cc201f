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

#include "phraselette/service.hpp"

#include <algorithm>
#include <atomic>

#include "httplib.h"
#include "phraselette/serialize.hpp"

namespace phraselette {

using nlohmann::json;

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kOutOfBounds:
    case ErrorCode::kOverlappingInlet:
    case ErrorCode::kEmptyRange:
    case ErrorCode::kNoActiveWells:
    case ErrorCode::kSchemaVersionMismatch:
    case ErrorCode::kUnpronounceable:
    case ErrorCode::kEmptyInput:
    case ErrorCode::kMissingAnnotation:
      return 400;
    case ErrorCode::kUnknownInlet:
    case ErrorCode::kUnknownDocument:
    case ErrorCode::kUnknownWell:
    case ErrorCode::kUnknownJob:
    case ErrorCode::kUnknownRephrasing:
      return 404;
    case ErrorCode::kStaleGeneration:
      return 409;
    case ErrorCode::kBackendUnavailable:
    case ErrorCode::kContextTooLong:
    case ErrorCode::kMalformedResponse:
    case ErrorCode::kNoHypotheses:
      return 503;
    case ErrorCode::kIoError:
      return 500;
  }
  return 500;
}

json error_body(const Error& error) {
  return {{"error", {{"code", to_string(error.code())}, {"message", error.what()}}}};
}

struct Service::DocState {
  std::mutex mutex;
  Session session;
  // Latest job per inlet.
  std::map<std::string, std::shared_ptr<RunJob>> current_jobs;
  // Generation each inlet is at, read by running jobs without locking.
  std::map<std::string, std::shared_ptr<std::atomic<std::int64_t>>> generations;
  // Raw pool size already copied into history, per job.
  std::map<std::string, std::size_t> recorded;
  std::int64_t next_well = 1;
};

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::kInvalidArgument, what); }

json body_object(const json& body) {
  if (body.is_null()) return json::object();
  if (!body.is_object()) invalid("request body must be a JSON object");
  return body;
}

std::size_t offset_field(const json& body, const char* key) {
  const json& v = wire::require(body, key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    invalid(std::string("\"") + key + "\" must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::vector<std::string> id_list(const json& v, const char* key) {
  if (!v.is_array()) invalid(std::string("\"") + key + "\" must be a list of ids");
  std::vector<std::string> out;
  for (const json& x : v) {
    if (!x.is_string()) invalid(std::string("\"") + key + "\" must be a list of ids");
    out.push_back(x.get<std::string>());
  }
  return out;
}

}  // namespace

Service::Service(std::shared_ptr<const WellRegistry> registry, WellServices services, ServiceOptions options)
    : orchestrator_(std::move(registry), std::move(services)), options_(std::move(options)) {}

Service::~Service() {
  std::map<std::string, std::shared_ptr<RunJob>> jobs;
  {
    std::lock_guard lock(mutex_);
    jobs.swap(jobs_);
    docs_.clear();
  }
}

std::shared_ptr<Service::DocState> Service::install(Session session) {
  auto state = std::make_shared<DocState>();
  for (const Inlet& i : session.document.inlets()) {
    state->generations[i.id] = std::make_shared<std::atomic<std::int64_t>>(i.generation);
  }
  state->next_well = static_cast<std::int64_t>(session.well_configs.size()) + 1;
  state->session = std::move(session);
  return state;
}

std::shared_ptr<Service::DocState> Service::doc(const std::string& doc_id) {
  {
    std::lock_guard lock(mutex_);
    if (auto it = docs_.find(doc_id); it != docs_.end()) return it->second;
  }
  if (!options_.sessions_dir.empty()) {
    const auto path = options_.sessions_dir / (doc_id + ".json");
    if (std::filesystem::exists(path)) {
      Session s = load_session(path);
      if (s.id != doc_id) throw Error(ErrorCode::kInvalidArgument, "session file id does not match " + doc_id);
      auto state = install(std::move(s));
      std::lock_guard lock(mutex_);
      return docs_.emplace(doc_id, std::move(state)).first->second;
    }
  }
  throw Error(ErrorCode::kUnknownDocument, "unknown document " + doc_id);
}

std::shared_ptr<Service::DocState> Service::doc_with_inlet(const std::string& inlet_id) {
  std::vector<std::shared_ptr<DocState>> all;
  {
    std::lock_guard lock(mutex_);
    for (const auto& [id, d] : docs_) all.push_back(d);
  }
  for (const auto& d : all) {
    std::lock_guard lock(d->mutex);
    if (d->session.document.find_inlet(inlet_id) != nullptr) return d;
  }
  throw Error(ErrorCode::kUnknownInlet, "unknown inlet " + inlet_id);
}

std::shared_ptr<Service::DocState> Service::doc_with_well(const std::string& well_id) {
  std::vector<std::shared_ptr<DocState>> all;
  {
    std::lock_guard lock(mutex_);
    for (const auto& [id, d] : docs_) all.push_back(d);
  }
  for (const auto& d : all) {
    std::lock_guard lock(d->mutex);
    if (d->session.find_well(well_id) != nullptr) return d;
  }
  throw Error(ErrorCode::kUnknownWell, "unknown well " + well_id);
}

std::shared_ptr<RunJob> Service::find_job(const std::string& job_id) const {
  std::lock_guard lock(mutex_);
  auto it = jobs_.find(job_id);
  if (it == jobs_.end()) throw Error(ErrorCode::kUnknownJob, "unknown job " + job_id);
  return it->second;
}

void Service::record_history(DocState& state, const std::string& inlet_id) {
  auto it = state.current_jobs.find(inlet_id);
  if (it == state.current_jobs.end()) return;
  const RunJob& job = *it->second;
  const std::size_t raw = job.raw_pool().size();
  std::size_t& done = state.recorded[job.id()];
  if (raw == 0 || raw == done) return;
  done = raw;
  state.session.history.push_back({inlet_id, job.generation(), job.id(), job.snapshot().rephrasings});
}

void Service::persist(const DocState& state) const {
  if (options_.sessions_dir.empty()) return;
  save_session(state.session, options_.sessions_dir / (state.session.id + ".json"));
}

json Service::document_view(const DocState& state) const {
  const Session& s = state.session;
  json wells = json::array();
  for (const WellConfig& w : s.well_configs) {
    json e = wire::encode(w);
    e["active"] = s.active_wells.contains(w.well_id);
    e["color"] = well_color(w.well_id);
    wells.push_back(std::move(e));
  }
  json constraints = json::array();
  for (const Constraint& c : s.constraints) constraints.push_back(wire::encode(c));
  json jobs = json::object();
  for (const auto& [inlet, job] : state.current_jobs) jobs[inlet] = job->id();
  return {{"document", wire::encode(s.document)}, {"wells", wells}, {"constraints", constraints}, {"jobs", jobs}};
}

json Service::create_document(const json& raw) {
  const json body = body_object(raw);
  std::string text = wire::require_string(body, "text");
  std::string id;
  {
    std::lock_guard lock(mutex_);
    if (body.contains("id")) {
      id = wire::require_string(body, "id");
      if (id.empty() || id.find_first_of("/\\. ") != std::string::npos) {
        invalid("document ids must be nonempty and free of '/', '\\', '.' and spaces");
      }
      if (docs_.contains(id)) invalid("document " + id + " already exists");
    } else {
      do {
        id = "doc-" + std::to_string(next_doc_++);
      } while (docs_.contains(id));
    }
  }
  Session s;
  s.id = id;
  s.document = Document(id, std::move(text));
  const std::string words_id = id + "-words";
  s.well_configs.push_back({words_id, well_kind::kWords, std::nullopt, json::object()});
  s.active_wells.insert(words_id);
  s.log_event("user", "createDocument", {{"documentId", id}});
  auto state = install(std::move(s));
  std::lock_guard doc_lock(state->mutex);
  {
    std::lock_guard lock(mutex_);
    if (!docs_.emplace(id, state).second) invalid("document " + id + " already exists");
  }
  persist(*state);
  return document_view(*state);
}

json Service::get_document(const std::string& doc_id) {
  auto state = doc(doc_id);
  std::lock_guard lock(state->mutex);
  return document_view(*state);
}

json Service::create_inlet(const std::string& doc_id, const json& raw) {
  const json body = body_object(raw);
  auto state = doc(doc_id);
  std::lock_guard lock(state->mutex);
  Session& s = state->session;
  std::set<std::string> active = s.active_wells;
  if (body.contains("activeWellIds")) {
    active.clear();
    for (std::string& w : id_list(body["activeWellIds"], "activeWellIds")) {
      if (s.find_well(w) == nullptr) throw Error(ErrorCode::kUnknownWell, "unknown well " + w);
      active.insert(std::move(w));
    }
    for (const WellConfig& w : s.well_configs) {
      if (registry().get(w.kind).always_active) active.insert(w.well_id);
    }
  }
  const Inlet& inlet = s.document.create_inlet({offset_field(body, "start"), offset_field(body, "end")}, active);
  state->generations[inlet.id] = std::make_shared<std::atomic<std::int64_t>>(inlet.generation);
  json out = wire::encode(inlet);
  s.log_event("user", "createInlet", {{"inletId", inlet.id}, {"start", inlet.range.start}, {"end", inlet.range.end}});
  persist(*state);
  return out;
}

json Service::delete_inlet(const std::string& inlet_id) {
  auto state = doc_with_inlet(inlet_id);
  std::shared_ptr<RunJob> finished_job;
  {
    std::lock_guard lock(state->mutex);
    record_history(*state, inlet_id);
    state->session.document.remove_inlet(inlet_id);
    if (auto g = state->generations.find(inlet_id); g != state->generations.end()) {
      g->second->store(-1);
      state->generations.erase(g);
    }
    if (auto j = state->current_jobs.find(inlet_id); j != state->current_jobs.end()) {
      finished_job = j->second;
      state->current_jobs.erase(j);
    }
    state->session.log_event("user", "deleteInlet", {{"inletId", inlet_id}});
    persist(*state);
  }
  return {{"deleted", inlet_id}};
}

json Service::presets() const {
  const WellServices& sv = orchestrator_.services();
  json kinds = json::object();
  for (const std::string& k : registry().kinds()) {
    const WellDescriptor& d = registry().get(k);
    kinds[k] = {{"generates", d.capabilities.generates},
                {"constrains", d.capabilities.constrains},
                {"insights", d.capabilities.insights},
                {"views", d.capabilities.views},
                {"requiresDescription", d.requires_description},
                {"alwaysActive", d.always_active},
                {"parameters", d.parameter_docs},
                {"presets", sv.presets ? sv.presets->presets(k) : std::vector<std::string>{}}};
  }
  return {{"kinds", kinds}};
}

json Service::add_well(const std::string& doc_id, const json& raw) {
  const json body = body_object(raw);
  auto state = doc(doc_id);
  std::lock_guard lock(state->mutex);
  Session& s = state->session;
  WellConfig cfg;
  cfg.kind = wire::require_string(body, "kind");
  const WellDescriptor& d = registry().get(cfg.kind);
  if (body.contains("promptDescription") && !body["promptDescription"].is_null()) {
    cfg.prompt_description = wire::require_string(body, "promptDescription");
  } else if (d.requires_description) {
    const auto& presets = orchestrator_.services().presets;
    if (presets && !presets->presets(cfg.kind).empty()) {
      const auto n = std::ranges::count(s.well_configs, cfg.kind, &WellConfig::kind);
      cfg.prompt_description = presets->cycle(cfg.kind, static_cast<std::size_t>(n));
    }
  }
  if (body.contains("parameters")) {
    if (!body["parameters"].is_object()) invalid("\"parameters\" must be an object");
    cfg.parameters = body["parameters"];
  }
  do {
    cfg.well_id = doc_id + "-w" + std::to_string(state->next_well++);
  } while (s.find_well(cfg.well_id) != nullptr);
  registry().validate(cfg);
  bool active = true;
  if (body.contains("active")) {
    if (!body["active"].is_boolean()) invalid("\"active\" must be true or false");
    active = body["active"].get<bool>();
  }
  s.well_configs.push_back(cfg);
  if (active) {
    s.active_wells.insert(cfg.well_id);
    s.document.activate_well(cfg.well_id);
  } else {
    s.document.touch();
  }
  s.log_event("user", "addWell", {{"wellId", cfg.well_id}, {"kind", cfg.kind}});
  persist(*state);
  json out = wire::encode(cfg);
  out["active"] = active;
  out["color"] = well_color(cfg.well_id);
  return out;
}

json Service::update_well(const std::string& well_id, const json& raw) {
  const json body = body_object(raw);
  auto state = doc_with_well(well_id);
  std::lock_guard lock(state->mutex);
  Session& s = state->session;
  WellConfig updated = *s.find_well(well_id);
  const WellDescriptor& d = registry().get(updated.kind);

  if (body.contains("promptDescription")) {
    if (body["promptDescription"].is_null()) {
      updated.prompt_description.reset();
    } else {
      updated.prompt_description = wire::require_string(body, "promptDescription");
    }
  }
  if (body.contains("parameters")) {
    if (!body["parameters"].is_object()) invalid("\"parameters\" must be an object");
    updated.parameters = body["parameters"];
  }
  registry().validate(updated);

  std::optional<std::vector<Constraint>> constraints;
  if (body.contains("constraints")) {
    const json& list = body["constraints"];
    if (!list.is_array()) invalid("\"constraints\" must be a list");
    constraints.emplace();
    for (std::size_t i = 0; i < list.size(); ++i) {
      json c = list[i];
      if (!c.is_object()) invalid("constraints must be objects");
      if (!c.contains("id")) c["id"] = well_id + ".c" + std::to_string(i + 1);
      c["sourceWellId"] = well_id;
      constraints->push_back(wire::decode_constraint(c));
    }
  }

  std::optional<bool> active;
  std::optional<std::string> inlet_id;
  if (body.contains("active")) {
    if (!body["active"].is_boolean()) invalid("\"active\" must be true or false");
    active = body["active"].get<bool>();
    if (!*active && d.always_active) invalid(updated.kind + " wells cannot be deactivated");
  }
  if (body.contains("inletId")) {
    inlet_id = wire::require_string(body, "inletId");
    s.document.inlet(*inlet_id);
  }

  *s.find_well(well_id) = updated;
  if (constraints) {
    std::erase_if(s.constraints, [&](const Constraint& c) { return c.source_well_id == well_id; });
    s.constraints.insert(s.constraints.end(), constraints->begin(), constraints->end());
  }
  if (active && inlet_id) {
    std::set<std::string> ids = s.document.inlet(*inlet_id).active_well_ids;
    if (*active) {
      ids.insert(well_id);
    } else {
      ids.erase(well_id);
    }
    s.document.set_active_wells(*inlet_id, std::move(ids));
  } else if (active) {
    if (*active) {
      s.active_wells.insert(well_id);
      s.document.activate_well(well_id);
    } else {
      s.active_wells.erase(well_id);
      s.document.deactivate_well(well_id);
    }
  } else {
    s.document.touch();
  }
  json detail = {{"wellId", well_id}, {"fields", json::array()}};
  for (const auto& [k, v] : body.items()) detail["fields"].push_back(k);
  s.log_event("user", "updateWell", detail);
  persist(*state);

  json out = wire::encode(updated);
  out["active"] = s.active_wells.contains(well_id);
  out["color"] = well_color(well_id);
  return out;
}

json Service::run(const std::string& doc_id, const std::string& inlet_id, const json& raw) {
  const json body = body_object(raw);
  auto state = doc(doc_id);
  std::shared_ptr<RunJob> job;
  json out;
  {
    std::lock_guard lock(state->mutex);
    Session& s = state->session;
    const Inlet& inlet = s.document.inlet(inlet_id);

    std::vector<WellConfig> active;
    for (const WellConfig& w : s.well_configs) {
      if (inlet.active_well_ids.contains(w.well_id)) active.push_back(w);
    }
    bool all = !body.contains("wellIds");
    if (body.contains("all")) {
      if (!body["all"].is_boolean()) invalid("\"all\" must be true or false");
      all = body["all"].get<bool>() || all;
    }
    std::vector<std::string> run_ids;
    if (all) {
      for (const WellConfig& w : active) run_ids.push_back(w.well_id);
    } else {
      for (std::string& id : id_list(body["wellIds"], "wellIds")) {
        if (s.find_well(id) == nullptr) throw Error(ErrorCode::kUnknownWell, "unknown well " + id);
        if (!inlet.active_well_ids.contains(id)) invalid("well " + id + " is not active on inlet " + inlet_id);
        run_ids.push_back(std::move(id));
      }
    }
    if (run_ids.empty()) throw Error(ErrorCode::kNoActiveWells, "inlet " + inlet_id + " has no wells to run");

    std::vector<Constraint> extra;
    for (const Constraint& c : s.constraints) {
      if (c.source_well_id.empty() || inlet.active_well_ids.contains(c.source_well_id)) extra.push_back(c);
    }

    auto current = state->current_jobs.find(inlet_id);
    const bool extend = !all && current != state->current_jobs.end() &&
                        current->second->generation() == inlet.generation;
    if (extend) {
      job = current->second;
      orchestrator_.extend(*job, active, run_ids, extra);
    } else {
      for (const WellConfig& w : active) registry().validate(w);
      record_history(*state, inlet_id);
      const std::int64_t generation = s.document.begin_run(inlet_id);
      auto& gen = state->generations[inlet_id];
      if (!gen) gen = std::make_shared<std::atomic<std::int64_t>>(0);
      gen->store(generation);
      JobRequest request;
      {
        std::lock_guard map_lock(mutex_);
        request.job_id = "job-" + std::to_string(next_job_++);
      }
      request.context = {doc_id, inlet_id, generation, s.document.slice_context(inlet_id), options_.seed};
      request.active = active;
      request.run_ids = run_ids;
      request.extra_constraints = extra;
      request.is_current = [gen](std::int64_t g) { return gen->load() == g; };
      job = orchestrator_.start(std::move(request));
      state->current_jobs[inlet_id] = job;
      std::lock_guard map_lock(mutex_);
      jobs_[job->id()] = job;
    }
    s.log_event("user", "runWells", {{"inletId", inlet_id}, {"wellIds", run_ids}, {"jobId", job->id()},
                                     {"generation", job->generation()}});
    persist(*state);
    out = {{"jobId", job->id()}, {"inletId", inlet_id}, {"generation", job->generation()}, {"wellIds", run_ids}};
  }
  return out;
}

json Service::poll(const std::string& job_id, std::size_t cursor) const {
  return wire::encode(find_job(job_id)->snapshot(cursor));
}

bool Service::wait_job(const std::string& job_id, std::chrono::milliseconds timeout) const {
  return find_job(job_id)->wait(timeout);
}

json Service::accept(const std::string& inlet_id, const json& raw) {
  const json body = body_object(raw);
  const std::string rephrasing_id = wire::require_string(body, "rephrasingId");
  auto state = doc_with_inlet(inlet_id);
  std::lock_guard lock(state->mutex);
  Session& s = state->session;
  std::shared_ptr<RunJob> job;
  if (body.contains("jobId")) {
    job = find_job(wire::require_string(body, "jobId"));
    if (job->inlet_id() != inlet_id) invalid("job " + job->id() + " does not belong to inlet " + inlet_id);
  } else if (auto it = state->current_jobs.find(inlet_id); it != state->current_jobs.end()) {
    job = it->second;
  }
  if (!job) throw Error(ErrorCode::kUnknownRephrasing, "inlet " + inlet_id + " has no rephrasings");
  const std::vector<Rephrasing> pool = job->snapshot().rephrasings;
  auto found = std::ranges::find_if(pool, [&](const Rephrasing& r) { return r.id() == rephrasing_id; });
  if (found == pool.end()) throw Error(ErrorCode::kUnknownRephrasing, "unknown rephrasing " + rephrasing_id);

  record_history(*state, inlet_id);
  s.document.accept_rephrasing(inlet_id, *found);
  const Inlet& inlet = s.document.inlet(inlet_id);
  if (auto g = state->generations.find(inlet_id); g != state->generations.end()) g->second->store(inlet.generation);
  s.log_event("user", "acceptRephrasing",
              {{"inletId", inlet_id}, {"rephrasingId", rephrasing_id}, {"text", found->text}, {"jobId", job->id()}});
  persist(*state);
  return {{"document", wire::encode(s.document)}, {"inlet", wire::encode(inlet)}, {"accepted", wire::encode(*found)}};
}

json Service::get_session(const std::string& session_id) {
  auto state = doc(session_id);
  std::lock_guard lock(state->mutex);
  for (const auto& [inlet, job] : state->current_jobs) {
    if (job->complete()) record_history(*state, inlet);
  }
  return session_to_json(state->session);
}

json Service::put_session(const std::string& session_id, const json& body) {
  Session s = session_from_json(body);
  if (s.id.empty()) s.id = session_id;
  if (s.id != session_id) invalid("session id " + s.id + " does not match " + session_id);
  if (s.document.id() != session_id) {
    s.document = Document::restore(session_id, s.document.text(), s.document.inlets(), s.document.revision(),
                                   s.document.next_inlet_seq());
  }
  for (const WellConfig& w : s.well_configs) registry().validate(w);
  s.document.touch();
  s.log_event("user", "replaceSession", {{"sessionId", session_id}});
  auto state = install(std::move(s));
  std::shared_ptr<DocState> previous;
  {
    std::lock_guard lock(mutex_);
    auto& slot = docs_[session_id];
    previous = slot;
    slot = state;
  }
  if (previous) {
    std::lock_guard lock(previous->mutex);
    for (auto& [inlet, gen] : previous->generations) gen->store(-1);
  }
  std::lock_guard lock(state->mutex);
  persist(*state);
  return document_view(*state);
}

// ------------------------------------------------------------------- HTTP

struct HttpServer::Impl {
  Service& service;
  httplib::Server server;

  explicit Impl(Service& s) : service(s) { routes(); }

  static json parse_body(const httplib::Request& req) {
    if (req.body.empty()) return json::object();
    json j = json::parse(req.body, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::kInvalidArgument, "request body is not valid JSON");
    return j;
  }

  template <class F>
  void handle(httplib::Response& res, F&& f, int ok = 200) {
    try {
      json out = f();
      res.status = ok;
      res.set_content(out.dump(), "application/json");
    } catch (const Error& e) {
      res.status = http_status(e.code());
      res.set_content(error_body(e).dump(), "application/json");
    } catch (const std::exception& e) {
      res.status = 500;
      res.set_content(json{{"error", {{"code", "Internal"}, {"message", e.what()}}}}.dump(), "application/json");
    }
  }

  void routes() {
    using Req = httplib::Request;
    using Res = httplib::Response;
    server.Post("/documents", [this](const Req& req, Res& res) {
      handle(res, [&] { return service.create_document(parse_body(req)); }, 201);
    });
    server.Get(R"(/documents/([^/]+))", [this](const Req& req, Res& res) {
      handle(res, [&] { return service.get_document(req.matches[1]); });
    });
    server.Post(R"(/documents/([^/]+)/inlets)", [this](const Req& req, Res& res) {
      handle(res, [&] { return service.create_inlet(req.matches[1], parse_body(req)); }, 201);
    });
    server.Delete(R"(/inlets/([^/]+))", [this](const Req& req, Res& res) {
      handle(res, [&] { return service.delete_inlet(req.matches[1]); });
    });
    server.Get("/wells/presets", [this](const Req&, Res& res) {
      handle(res, [&] { return service.presets(); });
    });
    server.Post(R"(/documents/([^/]+)/wells)", [this](const Req& req, Res& res) {
      handle(res, [&] { return service.add_well(req.matches[1], parse_body(req)); }, 201);
    });
    server.Patch(R"(/wells/([^/]+))", [this](const Req& req, Res& res) {
      handle(res, [&] { return service.update_well(req.matches[1], parse_body(req)); });
    });
    server.Post(R"(/documents/([^/]+)/inlets/([^/]+)/run)", [this](const Req& req, Res& res) {
      handle(res, [&] { return service.run(req.matches[1], req.matches[2], parse_body(req)); }, 202);
    });
    server.Get(R"(/jobs/([^/]+))", [this](const Req& req, Res& res) {
      handle(res, [&] {
        std::size_t cursor = 0;
        if (req.has_param("cursor")) {
          const std::string v = req.get_param_value("cursor");
          if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) {
            throw Error(ErrorCode::kInvalidArgument, "cursor must be a non-negative integer");
          }
          cursor = std::stoull(v);
        }
        return service.poll(req.matches[1], cursor);
      });
    });
    server.Post(R"(/inlets/([^/]+)/accept)", [this](const Req& req, Res& res) {
      handle(res, [&] { return service.accept(req.matches[1], parse_body(req)); });
    });
    server.Get(R"(/sessions/([^/]+))", [this](const Req& req, Res& res) {
      handle(res, [&] { return service.get_session(req.matches[1]); });
    });
    server.Put(R"(/sessions/([^/]+))", [this](const Req& req, Res& res) {
      handle(res, [&] { return service.put_session(req.matches[1], parse_body(req)); });
    });
  }
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }

bool HttpServer::bind(const std::string& host, int port) { return impl_->server.bind_to_port(host, port); }

bool HttpServer::listen_after_bind() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace phraselette
