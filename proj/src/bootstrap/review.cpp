// Copyright 2026 The rxnie Authors.
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

#include <chrono>
#include <map>

#include "httplib.h"
#include "rxnie/bootstrap.hpp"

namespace rxnie {
namespace {

using json = nlohmann::json;

std::map<std::string, Verdict> verdict_map(const std::vector<Decision> &log) {
  std::map<std::string, Verdict> out;
  for (const Decision &d : log) out.emplace(d.candidate_id, d.verdict);
  return out;
}

CandidateStatus status_of(const std::map<std::string, Verdict> &verdicts, const std::string &id) {
  auto it = verdicts.find(id);
  if (it == verdicts.end()) return CandidateStatus::kPending;
  return it->second == Verdict::kAccept ? CandidateStatus::kAccepted : CandidateStatus::kRejected;
}

const IterationState &require_iteration(const WorkspaceState &s, int k) {
  for (const IterationState &it : s.iterations) {
    if (it.iteration == k) return it;
  }
  throw Error(ErrorCode::kInvalidState, "no iteration " + std::to_string(k));
}

json error_body(const Error &e) {
  return {{"error", std::string(error_code_name(e.code()))}, {"detail", e.detail()}};
}

constexpr const char *kPlaceholderPage =
    "<!doctype html>\n<html><head><meta charset=\"utf-8\"><title>rxnie review</title></head>\n"
    "<body><h1>rxnie review</h1>\n"
    "<p>The review API is served under <code>/api</code>. Start the server with "
    "<code>--static DIR</code> to serve the review console.</p></body></html>\n";

}  // namespace

json ReviewService::list_iterations() const {
  WorkspaceState s = ws_.state();
  json out = json::array();
  for (const IterationState &it : s.iterations) {
    auto verdicts = verdict_map(ws_.decisions(it.iteration));
    std::size_t pending = 0;
    std::size_t total = 0;
    for (const ReviewCandidate &c : ws_.queue(it.iteration)) {
      ++total;
      if (!verdicts.count(c.id)) ++pending;
    }
    out.push_back({{"iteration", it.iteration},
                   {"version_before", it.version_before},
                   {"version_after", it.version_after},
                   {"finalized", it.finalized},
                   {"candidates", total},
                   {"pending", pending},
                   {"accepted", it.counts.accepted},
                   {"rejected", it.counts.rejected}});
  }
  return out;
}

json ReviewService::list_candidates(int iteration, std::optional<Role> role) const {
  WorkspaceState s = ws_.state();
  require_iteration(s, iteration);
  auto verdicts = verdict_map(ws_.decisions(iteration));
  json out = json::array();
  for (const ReviewCandidate &c : ws_.queue(iteration)) {
    if (role && c.candidate.role != *role) continue;
    json snippets = json::array();
    for (const Snippet &sn : c.snippets) {
      snippets.push_back({{"doc_id", sn.doc_id},
                          {"text", sn.text},
                          {"highlight", {sn.highlight_start, sn.highlight_end}}});
    }
    out.push_back({{"candidate_id", c.id},
                   {"role", std::string(role_name(c.candidate.role))},
                   {"pattern", c.pattern_text()},
                   {"frequency", c.candidate.frequency},
                   {"matches", c.matches},
                   {"precision_proxy", c.precision_proxy},
                   {"snippets", std::move(snippets)},
                   {"status", std::string(status_name(status_of(verdicts, c.id)))}});
  }
  return out;
}

json ReviewService::record_decision(const std::string &candidate_id, Verdict verdict) {
  std::lock_guard<std::mutex> guard(write_mutex_);
  WorkspaceState s = ws_.state();
  const IterationState *open = s.open_iteration();
  if (open == nullptr) {
    // A candidate of a finalized iteration is a late decision, not an unknown id.
    for (const IterationState &it : s.iterations) {
      for (const ReviewCandidate &c : ws_.queue(it.iteration)) {
        if (c.id == candidate_id) {
          throw Error(ErrorCode::kAlreadyFinalized, "iteration " + std::to_string(it.iteration));
        }
      }
    }
    throw Error(ErrorCode::kUnknownCandidate, candidate_id);
  }
  const int k = open->iteration;
  bool known = false;
  for (const ReviewCandidate &c : ws_.queue(k)) known = known || c.id == candidate_id;
  if (!known) throw Error(ErrorCode::kUnknownCandidate, candidate_id);

  auto verdicts = verdict_map(ws_.decisions(k));
  auto it = verdicts.find(candidate_id);
  if (it != verdicts.end() && it->second != verdict) {
    throw Error(ErrorCode::kConflictingDecision,
                candidate_id + " is already " + std::string(verdict_name(it->second)) + "ed");
  }
  if (it == verdicts.end()) {
    auto now = std::chrono::system_clock::now().time_since_epoch();
    ws_.append_decision(k, {candidate_id, verdict, DecidedBy::kHuman,
                            std::chrono::duration_cast<std::chrono::seconds>(now).count()});
  }
  CandidateStatus status =
      verdict == Verdict::kAccept ? CandidateStatus::kAccepted : CandidateStatus::kRejected;
  return {{"candidate_id", candidate_id},
          {"iteration", k},
          {"status", std::string(status_name(status))}};
}

json ReviewService::finalize(int iteration) {
  std::lock_guard<std::mutex> guard(write_mutex_);
  PatternSet set = apply_decisions(ws_, iteration);
  WorkspaceState s = ws_.state();
  const IterationState &it = require_iteration(s, iteration);
  return {{"iteration", iteration},
          {"version", it.version_after},
          {"accepted", it.counts.accepted},
          {"rejected", it.counts.rejected},
          {"patterns", set.patterns.size()}};
}

int http_status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownCandidate:
    case ErrorCode::kUnknownDocument: return 404;
    default: break;
  }
  return error_category(code) == ErrorCategory::kState ? 409 : 400;
}

struct ReviewServer::Impl {
  ReviewService &service;
  httplib::Server server;

  explicit Impl(ReviewService &s) : service(s) {}
};

ReviewServer::ReviewServer(ReviewService &service, std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>(service)) {
  httplib::Server &srv = impl_->server;
  ReviewService &svc = impl_->service;

  auto send_json = [](httplib::Response &res, const json &body, int status = 200) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  };

  srv.set_exception_handler([send_json](const httplib::Request &, httplib::Response &res,
                                        std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const Error &e) {
      send_json(res, error_body(e), http_status_for(e.code()));
    } catch (const std::exception &e) {
      send_json(res, {{"error", "Internal"}, {"detail", e.what()}}, 500);
    }
  });

  auto int_param = [](const httplib::Request &req, const std::string &name) {
    if (!req.has_param(name)) throw Error(ErrorCode::kUsage, "missing parameter '" + name + "'");
    const std::string v = req.get_param_value(name);
    try {
      std::size_t used = 0;
      int n = std::stoi(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return n;
    } catch (const std::exception &) {
      throw Error(ErrorCode::kUsage, "parameter '" + name + "' must be an integer");
    }
  };

  auto body_json = [](const httplib::Request &req) {
    json j = json::parse(req.body, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw Error(ErrorCode::kUsage, "body must be a JSON object");
    return j;
  };

  srv.Get("/api/iterations", [&svc, send_json](const httplib::Request &, httplib::Response &res) {
    send_json(res, svc.list_iterations());
  });

  srv.Get("/api/candidates",
          [&svc, send_json, int_param](const httplib::Request &req, httplib::Response &res) {
            std::optional<Role> role;
            if (req.has_param("role") && !req.get_param_value("role").empty()) {
              role = parse_role(req.get_param_value("role"));
            }
            send_json(res, svc.list_candidates(int_param(req, "iteration"), role));
          });

  srv.Post("/api/decisions",
           [&svc, send_json, body_json](const httplib::Request &req, httplib::Response &res) {
             json j = body_json(req);
             if (!j.contains("candidate_id") || !j["candidate_id"].is_string() ||
                 !j.contains("verdict") || !j["verdict"].is_string()) {
               throw Error(ErrorCode::kUsage, "body needs string fields candidate_id and verdict");
             }
             send_json(res, svc.record_decision(j["candidate_id"].get<std::string>(),
                                                parse_verdict(j["verdict"].get<std::string>())));
           });

  srv.Post("/api/finalize",
           [&svc, send_json, body_json](const httplib::Request &req, httplib::Response &res) {
             json j = body_json(req);
             if (!j.contains("iteration") || !j["iteration"].is_number_integer()) {
               throw Error(ErrorCode::kUsage, "body needs integer field iteration");
             }
             send_json(res, svc.finalize(j["iteration"].get<int>()));
           });

  if (static_dir) {
    srv.set_mount_point("/", static_dir->string());
  } else {
    srv.Get("/", [](const httplib::Request &, httplib::Response &res) {
      res.set_content(kPlaceholderPage, "text/html");
    });
  }
}

ReviewServer::~ReviewServer() { stop(); }

int ReviewServer::bind(const std::string &host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

void ReviewServer::listen() { impl_->server.listen_after_bind(); }

void ReviewServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace rxnie
