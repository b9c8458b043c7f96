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

#include <algorithm>
#include <map>

#include "rxnie/bootstrap.hpp"
#include "rxnie/util.hpp"

namespace rxnie {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

constexpr std::size_t kMaxSnippets = 5;
constexpr std::size_t kSnippetContext = 6;  // items on each side of the match

std::map<int, double> score_map(const std::vector<ScoredCandidate> &scored) {
  std::map<int, double> out;
  for (const ScoredCandidate &sc : scored) {
    if (sc.candidate.entity_index >= 0) out[sc.candidate.entity_index] = sc.score;
  }
  return out;
}

bool contains_role(const std::vector<Role> &roles, Role r) {
  return std::find(roles.begin(), roles.end(), r) != roles.end();
}

Snippet make_snippet(const Document &doc, const MaskedText &m, std::size_t start, std::size_t len) {
  std::size_t first = start > kSnippetContext ? start - kSnippetContext : 0;
  std::size_t last = std::min(m.items.size(), start + len + kSnippetContext);
  auto [from, to] = m.char_span(first, last);
  auto [hl_from, hl_to] = m.char_span(start, start + len);
  Snippet s;
  s.doc_id = doc.id;
  s.text = doc.text.substr(from, to - from);
  s.highlight_start = hl_from - from;
  s.highlight_end = hl_to - from;
  return s;
}

void write_iteration_report(const Workspace &ws, int k) {
  write_file_atomic(ws.report_path(k), render_iteration_report(ws, k));
}

IterationState &find_iteration(WorkspaceState &s, int k) {
  for (IterationState &it : s.iterations) {
    if (it.iteration == k) return it;
  }
  throw Error(ErrorCode::kInvalidState, "no iteration " + std::to_string(k));
}

}  // namespace

bool CorpusScores::positive(std::size_t doc, Role role, int entity) const {
  if (doc >= scores.size()) return false;
  auto r = scores[doc].find(role);
  if (r == scores[doc].end()) return false;
  auto e = r->second.find(entity);
  return e != r->second.end() && e->second >= threshold;
}

CorpusScores score_corpus(const ExtractorModel &model, const std::vector<MaskedText> &corpus,
                          const std::vector<Role> &roles, const std::vector<WeakLabel> &fallback) {
  std::map<std::string, std::pair<int, std::string>> fallback_product;
  for (const WeakLabel &l : fallback) {
    if (l.role != Role::kProduct) continue;
    auto it = fallback_product.find(l.doc_id);
    if (it == fallback_product.end() || l.argument_entity < it->second.first) {
      fallback_product[l.doc_id] = {l.argument_entity, l.argument_text};
    }
  }

  CorpusScores out;
  out.threshold = model.threshold;
  out.scores.resize(corpus.size());
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    const MaskedText &m = corpus[d];
    std::optional<std::string> product;
    if (model.trained(Role::kProduct)) {
      auto scored = score_candidates(model, Role::kProduct, m, std::nullopt);
      for (const ScoredCandidate &sc : scored) {
        if (sc.score >= model.threshold) {
          product = sc.candidate.value;
          break;
        }
      }
      if (contains_role(roles, Role::kProduct)) out.scores[d][Role::kProduct] = score_map(scored);
    }
    if (!product) {
      auto it = fallback_product.find(m.doc_id);
      if (it != fallback_product.end()) product = it->second.second;
    }
    for (Role role : roles) {
      if (role == Role::kProduct || !model.trained(role) || !product) continue;
      if (argument_kind(role) == ArgumentKind::kLexicon) continue;
      out.scores[d][role] = score_map(score_candidates(model, role, m, product));
    }
  }
  return out;
}

std::vector<WeakLabel> model_labels(const CorpusScores &scores,
                                    const std::vector<MaskedText> &corpus) {
  std::vector<WeakLabel> out;
  for (std::size_t d = 0; d < corpus.size() && d < scores.scores.size(); ++d) {
    for (const auto &[role, by_entity] : scores.scores[d]) {
      for (const auto &[entity, score] : by_entity) {
        if (score < scores.threshold) continue;
        WeakLabel l;
        l.doc_id = corpus[d].doc_id;
        l.role = role;
        l.argument_entity = entity;
        l.argument_text = corpus[d].entities[static_cast<std::size_t>(entity)].value;
        l.provenance.kind = Provenance::Kind::kModel;
        l.provenance.score = score;
        out.push_back(std::move(l));
      }
    }
  }
  return out;
}

std::vector<ReviewCandidate> rank_candidates(const std::vector<MinedCandidate> &cands,
                                             const CorpusScores &scores,
                                             const std::vector<MaskedText> &corpus,
                                             const std::vector<Document> &docs,
                                             std::size_t top_k_per_role) {
  std::vector<ReviewCandidate> ranked;
  ranked.reserve(cands.size());
  for (const MinedCandidate &cand : cands) {
    Pattern p = make_pattern(cand.role, cand.items);
    ReviewCandidate rc;
    rc.id = p.id;
    rc.candidate = cand;
    std::size_t positive = 0;
    for (std::size_t d = 0; d < corpus.size(); ++d) {
      for (const Match &m : match_pattern(p, corpus[d])) {
        ++rc.matches;
        if (scores.positive(d, cand.role, m.argument_entity)) ++positive;
        if (rc.snippets.size() < kMaxSnippets && d < docs.size()) {
          rc.snippets.push_back(make_snippet(docs[d], corpus[d], m.item_start, p.items.size()));
        }
      }
    }
    rc.precision_proxy =
        rc.matches == 0 ? 0.0 : static_cast<double>(positive) / static_cast<double>(rc.matches);
    ranked.push_back(std::move(rc));
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const ReviewCandidate &a, const ReviewCandidate &b) {
    if (a.candidate.frequency != b.candidate.frequency) {
      return a.candidate.frequency > b.candidate.frequency;
    }
    if (a.precision_proxy != b.precision_proxy) return a.precision_proxy > b.precision_proxy;
    if (a.candidate.role != b.candidate.role) return a.candidate.role < b.candidate.role;
    return a.pattern_text() < b.pattern_text();
  });
  std::map<Role, std::size_t> kept;
  std::vector<ReviewCandidate> out;
  for (ReviewCandidate &rc : ranked) {
    if (kept[rc.candidate.role]++ < top_k_per_role) out.push_back(std::move(rc));
  }
  return out;
}

std::vector<Decision> auto_accept(const std::vector<ReviewCandidate> &queue,
                                  const BootstrapConfig &config) {
  std::vector<Decision> out;
  out.reserve(queue.size());
  for (const ReviewCandidate &c : queue) {
    bool accept = c.candidate.frequency >= config.min_freq &&
                  c.precision_proxy >= config.auto_accept_precision;
    out.push_back({c.id, accept ? Verdict::kAccept : Verdict::kReject, DecidedBy::kAuto, 0});
  }
  return out;
}

std::vector<QAExample> build_linguistic_dataset(const std::vector<Document> &docs,
                                                const std::vector<MaskedText> &masked,
                                                const PatternSet &patterns,
                                                const BootstrapConfig &config,
                                                std::vector<WeakLabel> *labels_out) {
  std::vector<WeakLabel> labels;
  for (WeakLabel &l : weak_label(masked, patterns)) {
    if (contains_role(config.linguistic_roles, l.role)) labels.push_back(std::move(l));
  }
  std::vector<QAExample> qa = labels_to_qa(labels, docs, config.negative_ratio, config.seed);
  if (labels_out != nullptr) *labels_out = std::move(labels);
  return qa;
}

IterationState run_iteration(const Workspace &ws, const BootstrapConfig &config) {
  config.validate();
  WorkspaceState state = ws.state();
  if (const IterationState *open = state.open_iteration()) {
    throw Error(ErrorCode::kInvalidState,
                "iteration " + std::to_string(open->iteration) + " awaits review");
  }
  const std::vector<Document> docs = ws.corpus();
  const PatternSet patterns = ws.patterns();
  if (patterns.patterns.empty()) throw Error(ErrorCode::kNoPatterns, "pattern set is empty");
  const std::vector<MaskedText> masked = mask_corpus(docs, ws.gazetteer());
  const int k = static_cast<int>(state.iterations.size()) + 1;

  // Steps 1-2: label with the current patterns and train.
  std::vector<WeakLabel> labels;
  std::vector<QAExample> qa = build_linguistic_dataset(docs, masked, patterns, config, &labels);
  if (qa.empty()) {
    throw Error(ErrorCode::kEmptyTrainingSet, "current patterns label nothing in the corpus");
  }
  write_file_atomic(ws.iteration_dir(k) / "labels.jsonl", serialize_weak_labels(labels));
  write_file_atomic(ws.iteration_dir(k) / "qa.jsonl", serialize_qa_examples(qa));
  ExtractorModel model = train(qa, masked, config.hyper, config.threshold);
  save_model(model, ws.model_path(k));

  // Step 3: relabel the whole corpus with the model.
  CorpusScores scores = score_corpus(model, masked, config.linguistic_roles, labels);
  std::vector<WeakLabel> relabeled = model_labels(scores, masked);

  // Step 4: mine windows around model labels and queue the new ones.
  std::vector<MinedCandidate> mined =
      mine_candidates(to_labeled_documents(relabeled, masked), config.n_min, config.n_max);
  std::vector<MinedCandidate> fresh =
      dedupe_and_filter(mined, patterns, config.min_freq, state.rejected_keys);
  std::vector<ReviewCandidate> queue =
      rank_candidates(fresh, scores, masked, docs, config.top_k_per_role);
  write_file_atomic(ws.queue_path(k), serialize_queue(queue));
  write_file_atomic(ws.decisions_path(k), "");

  IterationState it;
  it.iteration = k;
  it.version_before = state.pattern_version;
  it.version_after = state.pattern_version;
  it.counts.labels = labels.size();
  it.counts.qa_examples = qa.size();
  it.counts.candidates = queue.size();
  it.model_path = fs::relative(ws.model_path(k), ws.root()).generic_string();
  state.iterations.push_back(it);
  ws.save_state(state);
  write_iteration_report(ws, k);

  if (config.review_mode == ReviewMode::kAuto) {
    for (const Decision &d : auto_accept(queue, config)) ws.append_decision(k, d);
    apply_decisions(ws, k);
    WorkspaceState after = ws.state();
    return find_iteration(after, k);
  }
  return it;
}

std::vector<IterationState> run_bootstrap(const Workspace &ws, const BootstrapConfig &config) {
  config.validate();
  std::vector<IterationState> out;
  while (static_cast<int>(ws.state().iterations.size()) < config.iterations) {
    IterationState it = run_iteration(ws, config);
    out.push_back(it);
    if (!it.finalized) return out;
  }
  WorkspaceState state = ws.state();
  if (state.open_iteration() != nullptr) return out;

  // Final supervision set from the enriched patterns, and the model trained on it.
  const std::vector<Document> docs = ws.corpus();
  const std::vector<MaskedText> masked = mask_corpus(docs, ws.gazetteer());
  std::vector<QAExample> qa = build_linguistic_dataset(docs, masked, ws.patterns(), config, nullptr);
  write_file_atomic(ws.datasets_dir() / "linguistic_qa.jsonl", serialize_qa_examples(qa));
  save_model(train(qa, masked, config.hyper, config.threshold), ws.final_model_path());
  return out;
}

PatternSet apply_decisions(const Workspace &ws, int k) {
  WorkspaceState state = ws.state();
  IterationState &it = find_iteration(state, k);
  if (it.finalized) throw Error(ErrorCode::kAlreadyFinalized, "iteration " + std::to_string(k));

  std::map<std::string, Verdict> verdicts;
  for (const Decision &d : ws.decisions(k)) verdicts.emplace(d.candidate_id, d.verdict);
  const std::vector<ReviewCandidate> queue = ws.queue(k);
  std::vector<std::string> pending;
  for (const ReviewCandidate &c : queue) {
    if (!verdicts.count(c.id)) pending.push_back(c.id);
  }
  if (!pending.empty()) {
    std::string detail = std::to_string(pending.size()) + " pending:";
    for (const std::string &id : pending) detail += " " + id;
    throw Error(ErrorCode::kPendingDecisions, detail);
  }

  PatternSet set = ws.patterns();
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  for (const ReviewCandidate &c : queue) {
    if (verdicts.at(c.id) == Verdict::kAccept) {
      if (set.add(make_pattern(c.candidate.role, c.candidate.items, PatternOrigin{k}))) ++accepted;
    } else {
      state.rejected_keys.insert(pattern_key(c.candidate.role, c.candidate.items));
      ++rejected;
    }
  }
  if (accepted > 0) {
    set.version = state.pattern_version + 1;
    write_file_atomic(ws.patterns_path(set.version), serialize_pattern_file(set));
    state.pattern_version = set.version;
  }
  it.version_after = state.pattern_version;
  it.finalized = true;
  it.counts.accepted = accepted;
  it.counts.rejected = rejected;
  ws.save_state(state);
  write_iteration_report(ws, k);
  return set;
}

std::string render_iteration_report(const Workspace &ws, int k) {
  WorkspaceState state = ws.state();
  const IterationState &it = find_iteration(state, k);
  std::map<std::string, Verdict> verdicts;
  for (const Decision &d : ws.decisions(k)) verdicts.emplace(d.candidate_id, d.verdict);

  json per_role = json::object();
  for (const ReviewCandidate &c : ws.queue(k)) {
    json &r = per_role[std::string(role_name(c.candidate.role))];
    if (r.is_null()) r = {{"candidates", 0}, {"accepted", json::array()}};
    r["candidates"] = r["candidates"].get<int>() + 1;
    auto v = verdicts.find(c.id);
    if (v != verdicts.end() && v->second == Verdict::kAccept) r["accepted"].push_back(c.pattern_text());
  }
  json j = {{"iteration", it.iteration},
            {"version_before", it.version_before},
            {"version_after", it.version_after},
            {"finalized", it.finalized},
            {"model_path", it.model_path},
            {"counts",
             {{"labels", it.counts.labels},
              {"qa_examples", it.counts.qa_examples},
              {"candidates", it.counts.candidates},
              {"accepted", it.counts.accepted},
              {"rejected", it.counts.rejected}}},
            {"roles", std::move(per_role)}};
  return j.dump(2) + "\n";
}

}  // namespace rxnie
