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

#include "rxnie/error.hpp"
#include "rxnie/extractor.hpp"
#include "rxnie/resources.hpp"
#include "rxnie/util.hpp"

namespace rxnie {

std::string question_for_role(Role role, const std::optional<std::string> &condition_product) {
  if (role == Role::kProduct) return "What are the products of the chemical reactions in the text?";
  if (!condition_product) {
    throw Error(ErrorCode::kMissingCondition,
                std::string(role_name(role)) + " questions need a product");
  }
  return "If the final product is " + *condition_product + ", what is the " +
         std::string(role_noun(role)) + " for this chemical reaction?";
}

ReactionTypeLexicon ReactionTypeLexicon::parse(std::string_view lexicon, std::string_view forms) {
  ReactionTypeLexicon lex;
  for (std::string_view line : split(lexicon, '\n')) {
    std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<std::string> key;
    for (const Token &tok : tokenize(t)) key.push_back(tok.normalized);
    lex.max_len_ = std::max(lex.max_len_, key.size());
    lex.entries_.emplace(std::move(key), std::string(t));
  }
  for (std::string_view line : split(forms, '\n')) {
    std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<std::string_view> cols = split(t, '\t');
    if (cols.size() != 2) continue;
    std::string from = to_lower_ascii(trim(cols[0]));
    std::string to = to_lower_ascii(trim(cols[1]));
    if (!from.empty() && from.front() == '-' && !to.empty() && to.front() == '-') {
      lex.suffix_forms_.emplace_back(from.substr(1), to.substr(1));
    } else {
      lex.word_forms_.emplace(std::move(from), std::move(to));
    }
  }
  return lex;
}

const ReactionTypeLexicon &ReactionTypeLexicon::builtin() {
  static const ReactionTypeLexicon lex =
      parse(resources::kReactionTypes, resources::kReactionTypeForms);
  return lex;
}

std::optional<std::string> ReactionTypeLexicon::noun_for(std::string_view word) const {
  std::string w = to_lower_ascii(word);
  auto lookup = [&](const std::string &noun) -> std::optional<std::string> {
    auto it = entries_.find({noun});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  };
  if (auto direct = lookup(w)) return direct;
  if (auto it = word_forms_.find(w); it != word_forms_.end()) return lookup(it->second);
  for (const auto &[from, to] : suffix_forms_) {
    if (w.size() > from.size() && w.compare(w.size() - from.size(), from.size(), from) == 0) {
      if (auto hit = lookup(w.substr(0, w.size() - from.size()) + to)) return hit;
    }
  }
  return std::nullopt;
}

std::optional<std::pair<std::size_t, std::string>> ReactionTypeLexicon::match(
    const MaskedText &m, std::size_t pos) const {
  std::vector<std::string> key;
  std::optional<std::pair<std::size_t, std::string>> best;
  for (std::size_t len = 1; len <= max_len_ && pos + len <= m.items.size(); ++len) {
    const MaskItem &item = m.items[pos + len - 1];
    if (item.kind != MaskKind::kWord) break;
    key.push_back(item.normalized);
    if (auto it = entries_.find(key); it != entries_.end()) best.emplace(len, it->second);
  }
  if (!best && m.items[pos].kind == MaskKind::kWord) {
    if (auto noun = noun_for(m.items[pos].normalized)) best.emplace(1, *noun);
  }
  return best;
}

std::vector<Candidate> generate_candidates(Role role, const MaskedText &m,
                                           const ReactionTypeLexicon &lexicon) {
  std::vector<Candidate> out;
  ArgumentKind want = argument_kind(role);
  if (want == ArgumentKind::kLexicon) {
    std::size_t i = 0;
    while (i < m.items.size()) {
      if (auto hit = lexicon.match(m, i)) {
        Candidate c;
        c.kind = CandidateKind::kLexicon;
        c.item_start = i;
        c.item_end = i + hit->first;
        c.value = hit->second;
        c.entity_value = c.value;
        out.push_back(std::move(c));
        i += hit->first;
      } else {
        ++i;
      }
    }
    return out;
  }
  MaskKind kind = want == ArgumentKind::kChem ? MaskKind::kChem : MaskKind::kNum;
  for (std::size_t i = 0; i < m.items.size(); ++i) {
    if (m.items[i].kind != kind) continue;
    Candidate c;
    c.kind = kind == MaskKind::kChem ? CandidateKind::kChem : CandidateKind::kNum;
    c.entity_index = m.items[i].entity_index;
    c.item_start = i;
    c.item_end = i + 1;
    c.entity_value = m.entities[static_cast<std::size_t>(c.entity_index)].value;
    c.value = c.entity_value;
    if (kind == MaskKind::kNum && i + 1 < m.items.size() &&
        m.items[i + 1].kind == MaskKind::kWord) {
      const Token &unit = m.tokens[m.items[i + 1].token_start];
      if (is_unit_token(unit.surface)) c.value += " " + unit.surface;
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace rxnie
