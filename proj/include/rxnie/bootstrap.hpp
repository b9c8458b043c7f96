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

// Iterative pattern enrichment over a workspace directory.
//
// One iteration labels the corpus with the current patterns, trains the
// extractor on the resulting QA examples, relabels the corpus with the
// model, mines frequent windows around model-labeled arguments and queues
// the new ones for review. Accepted candidates become patterns of the next
// pattern-set version.
//
// Workspace layout:
//
//   corpus.jsonl                 ingested documents
//   gazetteer.txt                optional, replaces the built-in gazetteer
//   patterns/v{N}.tsv            pattern set, version N (v0 = seeds)
//   iterations/{k}/labels.jsonl  weak labels used for training
//   iterations/{k}/qa.jsonl      training examples
//   iterations/{k}/queue.jsonl   ranked review candidates
//   iterations/{k}/decisions.jsonl  append-only decision log
//   models/{k}.json              extractor trained in iteration k
//   models/final.json            extractor trained on the final pattern set
//   datasets/                    QA datasets and filter statistics
//   reports/iteration_{k}.json   iteration summary
//   state.json                   versions, iteration states, rejected keys

#ifndef RXNIE_BOOTSTRAP_HPP_
#define RXNIE_BOOTSTRAP_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rxnie/corpus.hpp"
#include "rxnie/error.hpp"
#include "rxnie/extractor.hpp"
#include "rxnie/pattern.hpp"
#include "rxnie/roles.hpp"
#include "rxnie/supervision.hpp"

namespace rxnie {

enum class ReviewMode { kInteractive, kAuto };

struct BootstrapConfig {
  int iterations = 3;
  int n_min = kDefaultMinNgram;
  int n_max = kDefaultMaxNgram;
  int min_freq = 5;
  std::size_t top_k_per_role = 50;
  ReviewMode review_mode = ReviewMode::kInteractive;
  double auto_accept_precision = 0.8;
  double negative_ratio = 0.0;  // label-free documents still hold unlabeled mentions
  std::uint64_t seed = 13;  // negative sampling
  Hyper hyper;
  double threshold = kDefaultThreshold;
  std::vector<Role> linguistic_roles = {Role::kProduct, Role::kYield, Role::kTemperature,
                                        Role::kTime};

  /// Throws Usage on out-of-range values.
  void validate() const;
};

enum class CandidateStatus { kPending, kAccepted, kRejected };
std::string_view status_name(CandidateStatus s);

struct Snippet {
  std::string doc_id;
  std::string text;
  std::size_t highlight_start = 0;  // byte range of the matched window in `text`
  std::size_t highlight_end = 0;
};

struct ReviewCandidate {
  std::string id;  // id of the pattern it would become
  MinedCandidate candidate;
  std::size_t matches = 0;  // corpus-wide matches of the candidate pattern
  double precision_proxy = 0.0;
  std::vector<Snippet> snippets;
  CandidateStatus status = CandidateStatus::kPending;

  std::string pattern_text() const { return print_items(candidate.items); }
};

/// Model scores of every argument candidate, per document and role.
struct CorpusScores {
  // scores[doc][role] maps entity index -> score
  std::vector<std::map<Role, std::map<int, double>>> scores;
  double threshold = kDefaultThreshold;

  bool positive(std::size_t doc, Role role, int entity) const;
};

/// Scores the linguistic roles of every document. Non-product roles are
/// conditioned on the first predicted product, else the first product in
/// `fallback`, else skipped.
CorpusScores score_corpus(const ExtractorModel &model, const std::vector<MaskedText> &corpus,
                          const std::vector<Role> &roles,
                          const std::vector<WeakLabel> &fallback = {});

/// One label per argument scoring at or above the threshold.
std::vector<WeakLabel> model_labels(const CorpusScores &scores,
                                    const std::vector<MaskedText> &corpus);

/// Proxy = share of the candidate's corpus matches whose argument the model
/// scores positive. Sorted by frequency desc, proxy desc, then role and
/// pattern text; at most `top_k_per_role` per role; up to 5 snippets each.
std::vector<ReviewCandidate> rank_candidates(const std::vector<MinedCandidate> &cands,
                                             const CorpusScores &scores,
                                             const std::vector<MaskedText> &corpus,
                                             const std::vector<Document> &docs,
                                             std::size_t top_k_per_role);

enum class Verdict { kAccept, kReject };
enum class DecidedBy { kHuman, kAuto };

struct Decision {
  std::string candidate_id;
  Verdict verdict = Verdict::kAccept;
  DecidedBy decided_by = DecidedBy::kHuman;
  std::int64_t timestamp = 0;  // unix seconds; 0 for automatic decisions

  bool operator==(const Decision &) const = default;
};

std::string_view verdict_name(Verdict v);
/// Accepts "accept"/"accepted" and "reject"/"rejected"; throws Usage.
Verdict parse_verdict(std::string_view s);

/// Accept iff frequency >= min_freq and proxy >= auto_accept_precision.
std::vector<Decision> auto_accept(const std::vector<ReviewCandidate> &queue,
                                  const BootstrapConfig &config);

struct IterationCounts {
  std::size_t labels = 0;
  std::size_t qa_examples = 0;
  std::size_t candidates = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

struct IterationState {
  int iteration = 0;
  int version_before = 0;
  int version_after = 0;  // equals version_before until finalized
  bool finalized = false;
  IterationCounts counts;
  std::string model_path;  // relative to the workspace root
};

struct WorkspaceState {
  int pattern_version = 0;
  bool seeded = false;
  std::vector<IterationState> iterations;
  std::set<std::string> rejected_keys;  // pattern_key of every rejected candidate

  /// The last iteration if it still awaits review.
  const IterationState *open_iteration() const;
};

/// Exclusive advisory lock on `<root>/.lock`; throws WorkspaceLocked.
class WorkspaceLock {
 public:
  explicit WorkspaceLock(const std::filesystem::path &root);
  ~WorkspaceLock();
  WorkspaceLock(const WorkspaceLock &) = delete;
  WorkspaceLock &operator=(const WorkspaceLock &) = delete;

 private:
  int fd_ = -1;
};

class Workspace {
 public:
  explicit Workspace(std::filesystem::path root);

  const std::filesystem::path &root() const { return root_; }
  std::filesystem::path corpus_path() const { return root_ / "corpus.jsonl"; }
  std::filesystem::path gazetteer_path() const { return root_ / "gazetteer.txt"; }
  std::filesystem::path state_path() const { return root_ / "state.json"; }
  std::filesystem::path patterns_path(int version) const;
  std::filesystem::path iteration_dir(int k) const;
  std::filesystem::path queue_path(int k) const { return iteration_dir(k) / "queue.jsonl"; }
  std::filesystem::path decisions_path(int k) const { return iteration_dir(k) / "decisions.jsonl"; }
  std::filesystem::path model_path(int k) const;
  std::filesystem::path report_path(int k) const;
  std::filesystem::path datasets_dir() const { return root_ / "datasets"; }
  /// Model trained on the final pattern set once all iterations are merged.
  std::filesystem::path final_model_path() const { return root_ / "models" / "final.json"; }

  /// Writes the corpus (validated) and resets nothing else.
  void ingest(const std::vector<Document> &docs, const std::optional<std::string> &gazetteer = {});
  /// Installs the seed set as version 0. Throws InvalidState once iterations exist.
  void install_seeds(const PatternSet &seeds);

  std::vector<Document> corpus() const;  // throws EmptyCorpus when absent or empty
  Gazetteer gazetteer() const;
  WorkspaceState state() const;
  void save_state(const WorkspaceState &s) const;
  /// Current pattern set; throws NoPatterns before seeding.
  PatternSet patterns() const;

  std::vector<ReviewCandidate> queue(int k) const;
  std::vector<Decision> decisions(int k) const;
  void append_decision(int k, const Decision &d) const;

 private:
  std::filesystem::path root_;
};

std::string serialize_queue(const std::vector<ReviewCandidate> &queue);
std::vector<ReviewCandidate> parse_queue(std::string_view jsonl);
std::string serialize_decision(const Decision &d);
std::vector<Decision> parse_decisions(std::string_view jsonl);
std::string serialize_state(const WorkspaceState &s);
WorkspaceState parse_state(std::string_view text);

/// Weak labels from `patterns` restricted to the linguistic roles, turned
/// into QA examples. `labels_out` receives the labels when set.
std::vector<QAExample> build_linguistic_dataset(const std::vector<Document> &docs,
                                                const std::vector<MaskedText> &masked,
                                                const PatternSet &patterns,
                                                const BootstrapConfig &config,
                                                std::vector<WeakLabel> *labels_out = nullptr);

/// Runs the next iteration; in auto mode also decides and merges it.
/// Throws EmptyCorpus, NoPatterns, or InvalidState when an earlier
/// iteration is still open.
IterationState run_iteration(const Workspace &ws, const BootstrapConfig &config);

/// Runs iterations until `config.iterations` exist or one pauses for review.
/// Once all are merged, writes datasets/linguistic_qa.jsonl from the final
/// pattern set and trains models/final.json on it.
std::vector<IterationState> run_bootstrap(const Workspace &ws, const BootstrapConfig &config);

/// Merges the decisions of iteration `k`. Throws PendingDecisions listing
/// undecided ids, AlreadyFinalized, or InvalidState for unknown iterations.
PatternSet apply_decisions(const Workspace &ws, int k);

/// Iteration summary written to reports/iteration_{k}.json.
std::string render_iteration_report(const Workspace &ws, int k);

/// Validated handlers behind the review HTTP API. Decision writes are
/// serialized by an internal mutex; callers hold the workspace lock.
class ReviewService {
 public:
  explicit ReviewService(const Workspace &ws) : ws_(ws) {}

  nlohmann::json list_iterations() const;
  /// `role` filters when set. Throws InvalidState for unknown iterations.
  nlohmann::json list_candidates(int iteration, std::optional<Role> role) const;
  /// Applies to the open iteration. Repeating a verdict is a no-op.
  /// Throws UnknownCandidate, ConflictingDecision or AlreadyFinalized.
  nlohmann::json record_decision(const std::string &candidate_id, Verdict verdict);
  nlohmann::json finalize(int iteration);

 private:
  const Workspace &ws_;
  std::mutex write_mutex_;
};

/// HTTP status for an error code: 404 unknown, 409 state conflict, 400 otherwise.
int http_status_for(ErrorCode code);

/// JSON-over-HTTP front end of ReviewService.
class ReviewServer {
 public:
  ReviewServer(ReviewService &service, std::optional<std::filesystem::path> static_dir = {});
  ~ReviewServer();
  ReviewServer(const ReviewServer &) = delete;
  ReviewServer &operator=(const ReviewServer &) = delete;

  /// Binds; port 0 picks a free port. Returns the bound port, or -1.
  int bind(const std::string &host, int port);
  /// Blocks until stop().
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace rxnie

#endif  // RXNIE_BOOTSTRAP_HPP_
