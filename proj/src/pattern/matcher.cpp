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

#include "rxnie/pattern.hpp"

namespace rxnie {

bool item_matches(const PatternItem &p, const MaskItem &m) {
  switch (p.kind) {
    case PatternItem::Kind::kLiteral: return m.kind == MaskKind::kWord && m.normalized == p.word;
    case PatternItem::Kind::kChem: return m.kind == MaskKind::kChem;
    case PatternItem::Kind::kNum: return m.kind == MaskKind::kNum;
  }
  return false;
}

std::vector<Match> match_pattern(const Pattern &p, const MaskedText &m) {
  std::vector<Match> out;
  const std::size_t len = p.items.size();
  if (len == 0 || m.items.size() < len) return out;
  const std::size_t arg = p.argument_index();
  if (arg == len) return out;

  // Anchor on the first literal when there is one: only windows whose anchor
  // position holds that word need a full comparison.
  std::size_t anchor = len;
  for (std::size_t i = 0; i < len; ++i) {
    if (p.items[i].kind == PatternItem::Kind::kLiteral) {
      anchor = i;
      break;
    }
  }
  const std::size_t last_start = m.items.size() - len;
  for (std::size_t s = 0; s <= last_start; ++s) {
    if (anchor < len && !item_matches(p.items[anchor], m.items[s + anchor])) continue;
    bool ok = true;
    for (std::size_t k = 0; k < len && ok; ++k) {
      if (k != anchor) ok = item_matches(p.items[k], m.items[s + k]);
    }
    if (!ok) continue;
    Match match;
    match.doc_id = m.doc_id;
    match.item_start = s;
    match.pattern_id = p.id;
    match.argument_entity = m.items[s + arg].entity_index;
    out.push_back(std::move(match));
  }
  return out;
}

std::vector<Match> match_all(const PatternSet &set, const MaskedText &m) {
  std::vector<Match> out;
  for (std::size_t i = 0; i < set.patterns.size(); ++i) {
    for (Match &match : match_pattern(set.patterns[i], m)) {
      match.pattern_index = i;
      out.push_back(std::move(match));
    }
  }
  return out;
}

}  // namespace rxnie
