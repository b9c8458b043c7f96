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

#include <gtest/gtest.h>

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rxnie/bootstrap.hpp"
#include "rxnie/error.hpp"
#include "rxnie/util.hpp"
#include "synthetic.hpp"

namespace rxnie {
namespace {

namespace fs = std::filesystem;

template <typename Fn>
ErrorCode code_of(Fn &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  return ErrorCode::kUsage;
}

ReviewCandidate queued(const std::string &text, int frequency, double proxy, Role role = Role::kProduct) {
  ReviewCandidate c;
  c.candidate = {role, parse_pattern(role_name(role), text).items, frequency, {}};
  c.id = make_pattern(role, c.candidate.items).id;
  c.precision_proxy = proxy;
  return c;
}

std::set<std::string> keys_of(const PatternSet &set) {
  std::set<std::string> out;
  for (const Pattern &p : set.patterns) out.insert(pattern_key(p.role, p.items));
  return out;
}

// A 200-document workspace with iteration 1 run and waiting for review.
class PendingIteration : public ::testing::Test {
 protected:
  void SetUp() override {
    ws_ = std::make_unique<Workspace>(testing::seeded_synthetic_workspace(dir_.path(), 200, 7));
    state_ = run_iteration(*ws_, config_);
  }

  testing::TempDir dir_{"boot"};
  BootstrapConfig config_;
  std::unique_ptr<Workspace> ws_;
  IterationState state_;
};

TEST_F(PendingIteration, PausesWithCandidatesAndUnchangedVersion) {
  EXPECT_EQ(state_.iteration, 1);
  EXPECT_FALSE(state_.finalized);
  EXPECT_GT(state_.counts.candidates, 0u);
  EXPECT_GT(state_.counts.labels, 0u);
  EXPECT_EQ(state_.version_before, 0);
  EXPECT_EQ(state_.version_after, 0);
  EXPECT_EQ(ws_->state().pattern_version, 0);
  EXPECT_TRUE(fs::exists(ws_->queue_path(1)));
  EXPECT_TRUE(fs::exists(ws_->model_path(1)));
  EXPECT_TRUE(fs::exists(ws_->iteration_dir(1) / "labels.jsonl"));
  EXPECT_TRUE(fs::exists(ws_->iteration_dir(1) / "qa.jsonl"));
  ASSERT_NE(ws_->state().open_iteration(), nullptr);
  EXPECT_EQ(code_of([&] { run_iteration(*ws_, config_); }), ErrorCode::kInvalidState);
}

TEST_F(PendingIteration, QueueRespectsTopKAndOrdering) {
  std::vector<ReviewCandidate> q = ws_->queue(1);
  ASSERT_EQ(q.size(), state_.counts.candidates);
  std::map<Role, std::size_t> per_role;
  std::set<std::string> seeds = keys_of(default_seed_patterns());
  for (std::size_t i = 0; i < q.size(); ++i) {
    ++per_role[q[i].candidate.role];
    EXPECT_EQ(q[i].status, CandidateStatus::kPending);
    EXPECT_GE(q[i].candidate.frequency, config_.min_freq);
    EXPECT_GE(q[i].precision_proxy, 0.0);
    EXPECT_LE(q[i].precision_proxy, 1.0);
    EXPECT_LE(q[i].snippets.size(), 5u);
    EXPECT_EQ(seeds.count(pattern_key(q[i].candidate.role, q[i].candidate.items)), 0u);
    if (i > 0) EXPECT_GE(q[i - 1].candidate.frequency, q[i].candidate.frequency);
  }
  for (const auto &[role, n] : per_role) EXPECT_LE(n, config_.top_k_per_role);
}

// The stored match count equals an independent window scan over the corpus.
TEST_F(PendingIteration, MatchCountsAgreeWithNaiveScan) {
  std::vector<MaskedText> masked = mask_corpus(ws_->corpus(), ws_->gazetteer());
  for (const ReviewCandidate &c : ws_->queue(1)) {
    Pattern p = make_pattern(c.candidate.role, c.candidate.items);
    std::size_t n = 0;
    for (const MaskedText &m : masked) n += testing::naive_matches(p, m).size();
    EXPECT_EQ(c.matches, n) << c.pattern_text();
    for (const Snippet &s : c.snippets) {
      ASSERT_LE(s.highlight_end, s.text.size());
      EXPECT_LT(s.highlight_start, s.highlight_end);
    }
  }
}

TEST_F(PendingIteration, PendingDecisionsBlockMerge) {
  try {
    apply_decisions(*ws_, 1);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kPendingDecisions);
    EXPECT_EQ(e.detail().rfind(std::to_string(state_.counts.candidates) + " pending", 0), 0u) << e.detail();
  }
  EXPECT_EQ(code_of([&] { apply_decisions(*ws_, 9); }), ErrorCode::kInvalidState);
}

TEST_F(PendingIteration, AcceptThreeGrowsSetByThree) {
  std::vector<ReviewCandidate> q = ws_->queue(1);
  ASSERT_GE(q.size(), 3u);
  const PatternSet before = ws_->patterns();
  for (std::size_t i = 0; i < q.size(); ++i) {
    ws_->append_decision(1, {q[i].id, i < 3 ? Verdict::kAccept : Verdict::kReject, DecidedBy::kHuman, 1});
  }
  PatternSet after = apply_decisions(*ws_, 1);
  EXPECT_EQ(after.patterns.size(), before.patterns.size() + 3);
  EXPECT_EQ(after.version, before.version + 1);
  EXPECT_EQ(ws_->state().pattern_version, 1);
  EXPECT_TRUE(fs::exists(ws_->patterns_path(1)));
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_TRUE(after.contains(q[i].candidate.role, q[i].candidate.items));
    EXPECT_EQ(after.patterns[before.patterns.size() + i].origin.iteration, 1);
  }
  const WorkspaceState s = ws_->state();
  EXPECT_TRUE(s.iterations[0].finalized);
  EXPECT_EQ(s.iterations[0].counts.accepted, 3u);
  EXPECT_EQ(s.iterations[0].counts.rejected, q.size() - 3);
  EXPECT_EQ(s.rejected_keys.size(), q.size() - 3);
  EXPECT_EQ(code_of([&] { apply_decisions(*ws_, 1); }), ErrorCode::kAlreadyFinalized);

  // Neither accepted nor rejected candidates come back in the next queue.
  run_iteration(*ws_, config_);
  std::set<std::string> earlier;
  for (const ReviewCandidate &c : q) earlier.insert(pattern_key(c.candidate.role, c.candidate.items));
  for (const ReviewCandidate &c : ws_->queue(2)) {
    EXPECT_EQ(earlier.count(pattern_key(c.candidate.role, c.candidate.items)), 0u) << c.pattern_text();
  }
}

TEST_F(PendingIteration, RejectAllLeavesVersion) {
  for (const ReviewCandidate &c : ws_->queue(1)) {
    ws_->append_decision(1, {c.id, Verdict::kReject, DecidedBy::kHuman, 1});
  }
  PatternSet after = apply_decisions(*ws_, 1);
  EXPECT_EQ(after.version, 0);
  EXPECT_EQ(keys_of(after), keys_of(default_seed_patterns()));
  EXPECT_EQ(ws_->state().pattern_version, 0);
  EXPECT_FALSE(fs::exists(ws_->patterns_path(1)));
}

TEST_F(PendingIteration, StateAndQueueRoundTrip) {
  const std::string queue_text = read_file(ws_->queue_path(1));
  EXPECT_EQ(serialize_queue(parse_queue(queue_text)), queue_text);
  const WorkspaceState s = ws_->state();
  EXPECT_EQ(serialize_state(parse_state(serialize_state(s))), serialize_state(s));
  Decision d{"abc", Verdict::kReject, DecidedBy::kAuto, 0};
  EXPECT_EQ(parse_decisions(serialize_decision(d)), (std::vector<Decision>{d}));
  EXPECT_THROW(parse_state("{"), Error);
}

TEST(Bootstrap, AutoRunProducesThreeVersions) {
  testing::TempDir dir("auto");
  Workspace ws = testing::seeded_synthetic_workspace(dir.path(), 200, 7);
  BootstrapConfig config;
  config.review_mode = ReviewMode::kAuto;
  config.min_freq = 3;
  config.auto_accept_precision = 0.5;
  std::vector<IterationState> states = run_bootstrap(ws, config);
  ASSERT_EQ(states.size(), 3u);
  for (int k = 0; k < 3; ++k) {
    EXPECT_TRUE(states[k].finalized);
    EXPECT_EQ(states[k].version_after, k + 1) << "iteration " << k + 1;
    EXPECT_TRUE(fs::exists(ws.report_path(k + 1)));
  }
  EXPECT_TRUE(fs::exists(ws.patterns_path(3)));
  EXPECT_TRUE(fs::exists(ws.final_model_path()));
  EXPECT_TRUE(fs::exists(ws.datasets_dir() / "linguistic_qa.jsonl"));

  // Each version contains the previous one.
  for (int v = 0; v < 3; ++v) {
    std::set<std::string> lo = keys_of(load_pattern_file(ws.patterns_path(v), v));
    std::set<std::string> hi = keys_of(load_pattern_file(ws.patterns_path(v + 1), v + 1));
    for (const std::string &k : lo) EXPECT_EQ(hi.count(k), 1u) << k;
    EXPECT_GT(hi.size(), lo.size());
  }
  // Already complete: nothing more to run.
  EXPECT_TRUE(run_bootstrap(ws, config).empty());
}

TEST(Bootstrap, MissingCorpusAndPatterns) {
  testing::TempDir dir("empty");
  Workspace ws(dir.path());
  EXPECT_EQ(code_of([&] { run_iteration(ws, BootstrapConfig{}); }), ErrorCode::kEmptyCorpus);
  EXPECT_EQ(code_of([&] { ws.ingest({}); }), ErrorCode::kEmptyCorpus);
  ws.ingest(testing::documents_of(testing::generate_corpus(5, 1)));
  EXPECT_EQ(code_of([&] { run_iteration(ws, BootstrapConfig{}); }), ErrorCode::kNoPatterns);
  EXPECT_EQ(code_of([&] { ws.install_seeds(PatternSet{}); }), ErrorCode::kNoPatterns);
}

TEST(Bootstrap, ConfigValidation) {
  BootstrapConfig c;
  EXPECT_NO_THROW(c.validate());
  c.n_min = 1;
  EXPECT_EQ(code_of([&] { c.validate(); }), ErrorCode::kUsage);
  c = {};
  c.auto_accept_precision = 1.5;
  EXPECT_EQ(code_of([&] { c.validate(); }), ErrorCode::kUsage);
  c = {};
  c.linguistic_roles = {Role::kReactionType};
  EXPECT_EQ(code_of([&] { c.validate(); }), ErrorCode::kUsage);
}

TEST(RankCandidates, ProxyIsShareOfPositiveMatches) {
  std::vector<Document> docs;
  for (int i = 0; i < 5; ++i) {
    docs.push_back({"r" + std::to_string(i), "The mixture was heated to yield 5e .", DocumentSource::kFixture});
  }
  std::vector<MaskedText> masked = mask_corpus(docs, Gazetteer::builtin());
  CorpusScores scores;
  scores.scores.resize(5);
  for (int i = 0; i < 5; ++i) scores.scores[i][Role::kProduct][0] = i < 4 ? 0.9 : 0.1;
  MinedCandidate cand{Role::kProduct, parse_pattern("product", "to yield [Chem!]").items, 5, {"r0"}};

  std::vector<ReviewCandidate> ranked = rank_candidates({cand}, scores, masked, docs, 50);
  ASSERT_EQ(ranked.size(), 1u);
  EXPECT_EQ(ranked[0].matches, 5u);
  EXPECT_NEAR(ranked[0].precision_proxy, 0.8, 1e-12);
  EXPECT_EQ(ranked[0].id, make_pattern(Role::kProduct, cand.items).id);
  ASSERT_FALSE(ranked[0].snippets.empty());
  const Snippet &s = ranked[0].snippets[0];
  EXPECT_EQ(s.text.substr(s.highlight_start, s.highlight_end - s.highlight_start), "to yield 5e");

  for (auto &doc : scores.scores) doc[Role::kProduct][0] = 0.95;
  EXPECT_EQ(rank_candidates({cand}, scores, masked, docs, 50)[0].precision_proxy, 1.0);
}

TEST(RankCandidates, TopKPerRole) {
  std::vector<Document> docs = {{"a", "nothing to see", DocumentSource::kFixture}};
  std::vector<MaskedText> masked = mask_corpus(docs, Gazetteer::builtin());
  CorpusScores scores;
  scores.scores.resize(1);
  std::vector<MinedCandidate> cands;
  for (int i = 0; i < 60; ++i) {
    cands.push_back({Role::kProduct, {PatternItem::literal("w" + std::to_string(i)), PatternItem::chem(true)}, 60 - i, {}});
  }
  cands.push_back({Role::kYield, {PatternItem::literal("in"), PatternItem::num(true)}, 1, {}});
  std::vector<ReviewCandidate> ranked = rank_candidates(cands, scores, masked, docs, 50);
  ASSERT_EQ(ranked.size(), 51u);
  EXPECT_EQ(ranked.front().candidate.frequency, 60);
  std::size_t products = 0;
  for (const ReviewCandidate &c : ranked) products += c.candidate.role == Role::kProduct;
  EXPECT_EQ(products, 50u);
}

TEST(AutoAccept, Rule) {
  BootstrapConfig config;
  std::vector<Decision> d = auto_accept(
      {queued("to yield [Chem!]", 7, 0.9), queued("gave [Chem!]", 7, 0.5), queued("afforded [Chem!]", 4, 1.0),
       queued("furnished [Chem!]", 5, 0.8)},
      config);
  ASSERT_EQ(d.size(), 4u);
  EXPECT_EQ(d[0].verdict, Verdict::kAccept);
  EXPECT_EQ(d[1].verdict, Verdict::kReject);
  EXPECT_EQ(d[2].verdict, Verdict::kReject);
  EXPECT_EQ(d[3].verdict, Verdict::kAccept);
  for (const Decision &x : d) {
    EXPECT_EQ(x.decided_by, DecidedBy::kAuto);
    EXPECT_EQ(x.timestamp, 0);
  }
  EXPECT_TRUE(auto_accept({}, config).empty());
}

TEST(WorkspaceLock, SecondHolderIsRefused) {
  testing::TempDir dir("lock");
  {
    WorkspaceLock first(dir.path());
    EXPECT_EQ(code_of([&] { WorkspaceLock second(dir.path()); }), ErrorCode::kWorkspaceLocked);
  }
  EXPECT_NO_THROW(WorkspaceLock again(dir.path()));
}

}  // namespace
}  // namespace rxnie
