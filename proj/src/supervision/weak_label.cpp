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
#include <cmath>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include "rxnie/extractor.hpp"
#include "rxnie/supervision.hpp"
#include "rxnie/util.hpp"

namespace rxnie {
namespace {

// Numbers read "85 %" when a unit token follows, as candidate answers do.
std::string argument_text(const MaskedText &m, int entity) {
  const EntityTag &e = m.entities[static_cast<std::size_t>(entity)];
  std::string text = e.value;
  const std::size_t item = m.entity_item[static_cast<std::size_t>(entity)];
  if (e.kind == EntityKind::kNum && item + 1 < m.items.size()) {
    const Token &next = m.tokens[m.items[item + 1].token_start];
    if (m.items[item + 1].kind == MaskKind::kWord && is_unit_token(next.surface)) text += " " + next.surface;
  }
  return text;
}

}  // namespace

std::vector<WeakLabel> weak_label(const std::vector<MaskedText> &corpus, const PatternSet &set) {
  std::vector<WeakLabel> out;
  for (const MaskedText &m : corpus) {
    std::set<std::pair<Role, int>> seen;
    for (const Match &match : match_all(set, m)) {
      const Pattern &p = set.patterns[match.pattern_index];
      if (!seen.emplace(p.role, match.argument_entity).second) continue;
      WeakLabel label;
      label.doc_id = m.doc_id;
      label.role = p.role;
      label.argument_entity = match.argument_entity;
      label.argument_text = argument_text(m, match.argument_entity);
      label.provenance.kind = Provenance::Kind::kPattern;
      label.provenance.pattern_id = p.id;
      out.push_back(std::move(label));
    }
  }
  return out;
}

std::vector<LabeledDocument> to_labeled_documents(const std::vector<WeakLabel> &labels,
                                                  const std::vector<MaskedText> &corpus) {
  std::unordered_map<std::string, std::size_t> pos;
  std::vector<LabeledDocument> out(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    out[i].text = &corpus[i];
    pos.emplace(corpus[i].doc_id, i);
  }
  for (const WeakLabel &l : labels) {
    auto it = pos.find(l.doc_id);
    if (it == pos.end()) continue;
    out[it->second].labels.push_back({l.role, l.argument_entity});
  }
  return out;
}

std::vector<QAExample> labels_to_qa(const std::vector<WeakLabel> &labels,
                                    const std::vector<Document> &docs, double negative_ratio,
                                    std::uint64_t seed) {
  // doc id -> role -> entity index -> argument text (entity order = reading order)
  std::map<std::string, std::map<Role, std::map<int, std::string>>> by_doc;
  for (const WeakLabel &l : labels) by_doc[l.doc_id][l.role].emplace(l.argument_entity, l.argument_text);

  std::vector<const Document *> sorted;
  sorted.reserve(docs.size());
  for (const Document &d : docs) sorted.push_back(&d);
  std::sort(sorted.begin(), sorted.end(),
            [](const Document *a, const Document *b) { return a->id < b->id; });

  auto first_product = [&](const std::string &id) -> std::optional<std::string> {
    auto it = by_doc.find(id);
    if (it == by_doc.end()) return std::nullopt;
    auto r = it->second.find(Role::kProduct);
    if (r == it->second.end() || r->second.empty()) return std::nullopt;
    return r->second.begin()->second;
  };
  auto role_labels = [&](const std::string &id, Role role) -> const std::map<int, std::string> * {
    auto it = by_doc.find(id);
    if (it == by_doc.end()) return nullptr;
    auto r = it->second.find(role);
    return (r == it->second.end() || r->second.empty()) ? nullptr : &r->second;
  };

  Rng rng(seed);
  std::vector<QAExample> out;
  for (Role role : kAllRoles) {
    std::vector<QAExample> positives;
    std::vector<const Document *> eligible;
    for (const Document *d : sorted) {
      std::optional<std::string> cond;
      if (role != Role::kProduct) {
        cond = first_product(d->id);
        if (!cond) continue;
      }
      const auto *found = role_labels(d->id, role);
      if (found == nullptr) {
        eligible.push_back(d);
        continue;
      }
      QAExample ex;
      ex.role = role;
      ex.doc_id = d->id;
      ex.context = d->text;
      ex.condition_product = cond;
      ex.question = question_for_role(role, cond);
      for (const auto &[entity, text] : *found) {
        if (std::find(ex.answers.begin(), ex.answers.end(), text) == ex.answers.end()) {
          ex.answers.push_back(text);
        }
      }
      positives.push_back(std::move(ex));
    }
    if (positives.empty()) continue;

    double want = std::floor(negative_ratio * static_cast<double>(positives.size()) + 1e-9);
    std::size_t k = std::min(eligible.size(), static_cast<std::size_t>(std::max(0.0, want)));
    rng.shuffle(eligible);
    eligible.resize(k);
    std::sort(eligible.begin(), eligible.end(),
              [](const Document *a, const Document *b) { return a->id < b->id; });

    std::vector<QAExample> role_out = std::move(positives);
    for (const Document *d : eligible) {
      QAExample ex;
      ex.role = role;
      ex.doc_id = d->id;
      ex.context = d->text;
      if (role != Role::kProduct) ex.condition_product = first_product(d->id);
      ex.question = question_for_role(role, ex.condition_product);
      role_out.push_back(std::move(ex));
    }
    std::stable_sort(role_out.begin(), role_out.end(),
                     [](const QAExample &a, const QAExample &b) { return a.doc_id < b.doc_id; });
    for (QAExample &ex : role_out) out.push_back(std::move(ex));
  }
  return out;
}

}  // namespace rxnie
