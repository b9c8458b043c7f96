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
#include <unordered_map>

#include "rxnie/error.hpp"
#include "rxnie/pattern.hpp"

namespace rxnie {
namespace {

PatternItem to_pattern_item(const MaskItem &m, bool is_arg) {
  switch (m.kind) {
    case MaskKind::kWord: return PatternItem::literal(m.normalized);
    case MaskKind::kChem: return PatternItem::chem(is_arg);
    case MaskKind::kNum: return PatternItem::num(is_arg);
  }
  return {};
}

bool kind_fits(Role role, MaskKind kind) {
  switch (argument_kind(role)) {
    case ArgumentKind::kChem: return kind == MaskKind::kChem;
    case ArgumentKind::kNum: return kind == MaskKind::kNum;
    case ArgumentKind::kLexicon: return false;
  }
  return false;
}

bool canonical_less(const MinedCandidate &a, const MinedCandidate &b) {
  if (a.role != b.role) return a.role < b.role;
  return print_items(a.items) < print_items(b.items);
}

}  // namespace

std::vector<MinedCandidate> mine_candidates(const std::vector<LabeledDocument> &docs, int n_min,
                                            int n_max, bool allow_any_range) {
  if (n_min < 1 || n_max < n_min ||
      (!allow_any_range && (n_min < kDefaultMinNgram || n_max > kDefaultMaxNgram))) {
    throw Error(ErrorCode::kInvalidRange, "n-gram range [" + std::to_string(n_min) + ", " +
                                              std::to_string(n_max) + "]");
  }
  std::vector<MinedCandidate> out;
  std::unordered_map<std::string, std::size_t> index;

  for (const LabeledDocument &doc : docs) {
    if (doc.text == nullptr) continue;
    const MaskedText &m = *doc.text;
    std::vector<ArgumentLabel> labels = doc.labels;
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

    for (const ArgumentLabel &label : labels) {
      if (label.entity_index < 0 ||
          static_cast<std::size_t>(label.entity_index) >= m.entity_item.size()) {
        continue;
      }
      const std::size_t pos = m.entity_item[static_cast<std::size_t>(label.entity_index)];
      if (!kind_fits(label.role, m.items[pos].kind)) continue;
      for (int n = n_min; n <= n_max; ++n) {
        const std::size_t len = static_cast<std::size_t>(n);
        if (len > m.items.size()) break;
        std::size_t first = pos + 1 >= len ? pos + 1 - len : 0;
        std::size_t last = std::min(pos, m.items.size() - len);
        for (std::size_t s = first; s <= last; ++s) {
          PatternItems items;
          items.reserve(len);
          for (std::size_t k = s; k < s + len; ++k) {
            items.push_back(to_pattern_item(m.items[k], k == pos));
          }
          std::string key = pattern_key(label.role, items);
          auto [it, inserted] = index.try_emplace(key, out.size());
          if (inserted) {
            MinedCandidate c;
            c.role = label.role;
            c.items = std::move(items);
            out.push_back(std::move(c));
          }
          MinedCandidate &c = out[it->second];
          ++c.frequency;
          if (c.sample_doc_ids.size() < kMaxSampleDocs &&
              std::find(c.sample_doc_ids.begin(), c.sample_doc_ids.end(), m.doc_id) ==
                  c.sample_doc_ids.end()) {
            c.sample_doc_ids.push_back(m.doc_id);
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::vector<MinedCandidate> dedupe_and_filter(const std::vector<MinedCandidate> &cands,
                                              const PatternSet &existing, int min_freq,
                                              const std::set<std::string> &suppressed) {
  std::set<std::string> existing_keys;
  for (const Pattern &p : existing.patterns) existing_keys.insert(pattern_key(p.role, p.items));

  std::vector<const MinedCandidate *> pool;
  std::map<std::string, int> freq_by_key;
  for (const MinedCandidate &c : cands) {
    std::string key = pattern_key(c.role, c.items);
    if (existing_keys.count(key) > 0 || suppressed.count(key) > 0) continue;
    if (c.frequency < min_freq) continue;
    pool.push_back(&c);
    freq_by_key[key] = c.frequency;
  }

  std::vector<MinedCandidate> out;
  for (const MinedCandidate *c : pool) {
    const std::size_t len = c->items.size();
    std::size_t arg = len;
    for (std::size_t i = 0; i < len; ++i) {
      if (c->items[i].is_argument) arg = i;
    }
    bool subsumed = false;
    for (std::size_t sub = 1; sub < len && !subsumed; ++sub) {
      for (std::size_t s = 0; s + sub <= len && !subsumed; ++s) {
        if (arg < s || arg >= s + sub) continue;
        PatternItems window(c->items.begin() + static_cast<std::ptrdiff_t>(s),
                            c->items.begin() + static_cast<std::ptrdiff_t>(s + sub));
        auto it = freq_by_key.find(pattern_key(c->role, window));
        subsumed = it != freq_by_key.end() && it->second == c->frequency;
      }
    }
    if (!subsumed) out.push_back(*c);
  }

  std::sort(out.begin(), out.end(), [](const MinedCandidate &a, const MinedCandidate &b) {
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    if (a.items.size() != b.items.size()) return a.items.size() < b.items.size();
    return canonical_less(a, b);
  });
  return out;
}

}  // namespace rxnie
