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

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <fstream>

#include "rxnie/bootstrap.hpp"
#include "rxnie/util.hpp"

namespace rxnie {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

json counts_json(const IterationCounts &c) {
  return {{"labels", c.labels},
          {"qa_examples", c.qa_examples},
          {"candidates", c.candidates},
          {"accepted", c.accepted},
          {"rejected", c.rejected}};
}

}  // namespace

std::string_view status_name(CandidateStatus s) {
  switch (s) {
    case CandidateStatus::kPending: return "pending";
    case CandidateStatus::kAccepted: return "accepted";
    case CandidateStatus::kRejected: return "rejected";
  }
  return "pending";
}

std::string_view verdict_name(Verdict v) { return v == Verdict::kAccept ? "accept" : "reject"; }

Verdict parse_verdict(std::string_view s) {
  if (s == "accept" || s == "accepted") return Verdict::kAccept;
  if (s == "reject" || s == "rejected") return Verdict::kReject;
  throw Error(ErrorCode::kUsage, "verdict must be accept or reject, got '" + std::string(s) + "'");
}

void BootstrapConfig::validate() const {
  auto fail = [](const std::string &what) { throw Error(ErrorCode::kUsage, what); };
  if (iterations < 1) fail("iterations must be >= 1");
  if (n_min < kDefaultMinNgram || n_max > kDefaultMaxNgram || n_max < n_min) {
    fail("n-gram range must satisfy 2 <= n_min <= n_max <= 6");
  }
  if (min_freq < 1) fail("min_freq must be >= 1");
  if (top_k_per_role < 1) fail("top_k_per_role must be >= 1");
  if (!(auto_accept_precision >= 0.0 && auto_accept_precision <= 1.0)) {
    fail("auto_accept_precision must lie in [0, 1]");
  }
  if (!(negative_ratio >= 0.0)) fail("negative_ratio must be >= 0");
  if (!(threshold >= 0.0 && threshold <= 1.0)) fail("threshold must lie in [0, 1]");
  if (hyper.epochs < 1) fail("epochs must be >= 1");
  if (!(hyper.learning_rate > 0.0)) fail("learning_rate must be > 0");
  if (linguistic_roles.empty()) fail("linguistic_roles must not be empty");
  for (Role r : linguistic_roles) {
    if (argument_kind(r) == ArgumentKind::kLexicon) {
      fail(std::string(role_name(r)) + " has no pattern form and cannot be a linguistic role");
    }
  }
}

const IterationState *WorkspaceState::open_iteration() const {
  if (iterations.empty() || iterations.back().finalized) return nullptr;
  return &iterations.back();
}

WorkspaceLock::WorkspaceLock(const fs::path &root) {
  fs::create_directories(root);
  const std::string path = (root / ".lock").string();
  fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) throw Error(ErrorCode::kIo, "cannot open " + path);
  if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
    ::close(fd_);
    fd_ = -1;
    throw Error(ErrorCode::kWorkspaceLocked, root.string());
  }
}

WorkspaceLock::~WorkspaceLock() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

Workspace::Workspace(fs::path root) : root_(std::move(root)) {}

fs::path Workspace::patterns_path(int version) const {
  return root_ / "patterns" / ("v" + std::to_string(version) + ".tsv");
}
fs::path Workspace::iteration_dir(int k) const { return root_ / "iterations" / std::to_string(k); }
fs::path Workspace::model_path(int k) const {
  return root_ / "models" / (std::to_string(k) + ".json");
}
fs::path Workspace::report_path(int k) const {
  return root_ / "reports" / ("iteration_" + std::to_string(k) + ".json");
}

void Workspace::ingest(const std::vector<Document> &docs, const std::optional<std::string> &gazetteer) {
  if (docs.empty()) throw Error(ErrorCode::kEmptyCorpus, "no documents to ingest");
  if (!state().iterations.empty()) {
    throw Error(ErrorCode::kInvalidState, "corpus cannot change once iterations exist");
  }
  write_file_atomic(corpus_path(), serialize_corpus(docs));
  if (gazetteer) {
    Gazetteer::parse(*gazetteer);  // validate before persisting
    write_file_atomic(gazetteer_path(), *gazetteer);
  }
}

void Workspace::install_seeds(const PatternSet &seeds) {
  WorkspaceState s = state();
  if (!s.iterations.empty()) {
    throw Error(ErrorCode::kInvalidState, "seeds cannot change once iterations exist");
  }
  if (seeds.patterns.empty()) throw Error(ErrorCode::kNoPatterns, "seed set is empty");
  PatternSet v0 = seeds;
  v0.version = 0;
  write_file_atomic(patterns_path(0), serialize_pattern_file(v0));
  s.pattern_version = 0;
  s.seeded = true;
  save_state(s);
}

std::vector<Document> Workspace::corpus() const {
  if (!fs::exists(corpus_path())) throw Error(ErrorCode::kEmptyCorpus, "workspace has no corpus");
  std::vector<Document> docs = load_corpus(corpus_path());
  if (docs.empty()) throw Error(ErrorCode::kEmptyCorpus, corpus_path().string());
  return docs;
}

Gazetteer Workspace::gazetteer() const {
  if (fs::exists(gazetteer_path())) return Gazetteer::load(gazetteer_path());
  return Gazetteer::builtin();
}

WorkspaceState Workspace::state() const {
  if (!fs::exists(state_path())) return {};
  return parse_state(read_file(state_path()));
}

void Workspace::save_state(const WorkspaceState &s) const {
  write_file_atomic(state_path(), serialize_state(s));
}

PatternSet Workspace::patterns() const {
  WorkspaceState s = state();
  if (!s.seeded || !fs::exists(patterns_path(s.pattern_version))) {
    throw Error(ErrorCode::kNoPatterns, "workspace has no pattern set; run seed-label first");
  }
  return load_pattern_file(patterns_path(s.pattern_version), s.pattern_version);
}

std::vector<ReviewCandidate> Workspace::queue(int k) const {
  if (!fs::exists(queue_path(k))) return {};
  return parse_queue(read_file(queue_path(k)));
}

std::vector<Decision> Workspace::decisions(int k) const {
  if (!fs::exists(decisions_path(k))) return {};
  return parse_decisions(read_file(decisions_path(k)));
}

void Workspace::append_decision(int k, const Decision &d) const {
  fs::create_directories(iteration_dir(k));
  std::ofstream out(decisions_path(k), std::ios::app | std::ios::binary);
  out << serialize_decision(d);
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "cannot append to " + decisions_path(k).string());
}

std::string serialize_queue(const std::vector<ReviewCandidate> &queue) {
  std::string out;
  for (const ReviewCandidate &c : queue) {
    json snippets = json::array();
    for (const Snippet &s : c.snippets) {
      snippets.push_back({{"doc_id", s.doc_id},
                          {"text", s.text},
                          {"highlight", {s.highlight_start, s.highlight_end}}});
    }
    json j = {{"id", c.id},
              {"role", std::string(role_name(c.candidate.role))},
              {"pattern", c.pattern_text()},
              {"frequency", c.candidate.frequency},
              {"matches", c.matches},
              {"precision_proxy", c.precision_proxy},
              {"sample_doc_ids", c.candidate.sample_doc_ids},
              {"snippets", std::move(snippets)}};
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<ReviewCandidate> parse_queue(std::string_view jsonl) {
  std::vector<ReviewCandidate> out;
  std::size_t line_no = 0;
  for (std::string_view line : split(jsonl, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      json j = json::parse(line);
      ReviewCandidate c;
      c.id = j.at("id").get<std::string>();
      Pattern p = parse_pattern(j.at("role").get<std::string>(), j.at("pattern").get<std::string>());
      c.candidate.role = p.role;
      c.candidate.items = std::move(p.items);
      c.candidate.frequency = j.at("frequency").get<int>();
      c.candidate.sample_doc_ids = j.at("sample_doc_ids").get<std::vector<std::string>>();
      c.matches = j.at("matches").get<std::size_t>();
      c.precision_proxy = j.at("precision_proxy").get<double>();
      for (const json &s : j.at("snippets")) {
        c.snippets.push_back({s.at("doc_id").get<std::string>(), s.at("text").get<std::string>(),
                              s.at("highlight").at(0).get<std::size_t>(),
                              s.at("highlight").at(1).get<std::size_t>()});
      }
      out.push_back(std::move(c));
    } catch (const json::exception &e) {
      throw Error(ErrorCode::kParseError, "queue line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::string serialize_decision(const Decision &d) {
  json j = {{"candidate_id", d.candidate_id},
            {"verdict", std::string(verdict_name(d.verdict))},
            {"decided_by", d.decided_by == DecidedBy::kAuto ? "auto" : "human"},
            {"timestamp", d.timestamp}};
  return j.dump() + "\n";
}

std::vector<Decision> parse_decisions(std::string_view jsonl) {
  std::vector<Decision> out;
  std::size_t line_no = 0;
  for (std::string_view line : split(jsonl, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      json j = json::parse(line);
      Decision d;
      d.candidate_id = j.at("candidate_id").get<std::string>();
      d.verdict = parse_verdict(j.at("verdict").get<std::string>());
      d.decided_by = j.at("decided_by").get<std::string>() == "auto" ? DecidedBy::kAuto : DecidedBy::kHuman;
      d.timestamp = j.at("timestamp").get<std::int64_t>();
      out.push_back(std::move(d));
    } catch (const json::exception &e) {
      throw Error(ErrorCode::kParseError,
                  "decision line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::string serialize_state(const WorkspaceState &s) {
  json iterations = json::array();
  for (const IterationState &it : s.iterations) {
    iterations.push_back({{"iteration", it.iteration},
                          {"version_before", it.version_before},
                          {"version_after", it.version_after},
                          {"finalized", it.finalized},
                          {"counts", counts_json(it.counts)},
                          {"model_path", it.model_path}});
  }
  json j = {{"pattern_version", s.pattern_version},
            {"seeded", s.seeded},
            {"iterations", std::move(iterations)},
            {"rejected_keys", s.rejected_keys}};
  return j.dump(2) + "\n";
}

WorkspaceState parse_state(std::string_view text) {
  try {
    json j = json::parse(text);
    WorkspaceState s;
    s.pattern_version = j.at("pattern_version").get<int>();
    s.seeded = j.at("seeded").get<bool>();
    for (const json &it : j.at("iterations")) {
      IterationState st;
      st.iteration = it.at("iteration").get<int>();
      st.version_before = it.at("version_before").get<int>();
      st.version_after = it.at("version_after").get<int>();
      st.finalized = it.at("finalized").get<bool>();
      const json &c = it.at("counts");
      st.counts.labels = c.at("labels").get<std::size_t>();
      st.counts.qa_examples = c.at("qa_examples").get<std::size_t>();
      st.counts.candidates = c.at("candidates").get<std::size_t>();
      st.counts.accepted = c.at("accepted").get<std::size_t>();
      st.counts.rejected = c.at("rejected").get<std::size_t>();
      st.model_path = it.at("model_path").get<std::string>();
      s.iterations.push_back(std::move(st));
    }
    for (const json &k : j.at("rejected_keys")) s.rejected_keys.insert(k.get<std::string>());
    return s;
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kParseError, std::string("state.json: ") + e.what());
  }
}

}  // namespace rxnie
