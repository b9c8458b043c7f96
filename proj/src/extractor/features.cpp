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

// Feature names:
//   L1:w  L2:w w  L3:w w w     adjacent left n-grams, reading order
//   R1:w  R2:w w  R3:w w w     adjacent right n-grams
//   L@o:w / R@o:w              unigram at offset o = 2..4
//   L@ob:w w / R@ob:w w        bigram whose nearer item is at offset o = 2..3
//   Lw:w / Rw:w                any item within kBagWindow on that side
//   pos:first|middle|last      relative position of the candidate
//   kind:chem|num|lex, lex:<value>
//   cond:eq|ne|none            candidate equals the conditioning product
//   cdist:0|1|2|3-5|6+|none    item distance to the product's nearest mention
//   cdir:before|after          side of that mention

#include <algorithm>
#include <cstdlib>

#include "rxnie/extractor.hpp"
#include "rxnie/pipeline.hpp"

namespace rxnie {
namespace {

constexpr std::size_t kWindow = 4;
constexpr std::size_t kMaxGram = 3;
constexpr std::size_t kBagWindow = 6;

std::string render(const MaskItem &item) {
  switch (item.kind) {
    case MaskKind::kWord: return item.normalized;
    case MaskKind::kChem: return "[Chem]";
    case MaskKind::kNum: return "[Num]";
  }
  return {};
}

std::string join(const std::vector<std::string> &parts) {
  std::string out;
  for (const std::string &p : parts) {
    if (!out.empty()) out.push_back(' ');
    out += p;
  }
  return out;
}

std::string distance_bucket(std::size_t d) {
  if (d <= 2) return std::to_string(d);
  if (d <= 5) return "3-5";
  return "6+";
}

}  // namespace

FeatureVector featurize(const Candidate &c, const MaskedText &m,
                        const std::optional<std::string> &condition_product) {
  FeatureVector f;
  const std::size_t n = m.items.size();

  // left[o-1] is the item o positions before the candidate
  std::vector<std::string> left;
  for (std::size_t o = 1; o <= kWindow && o <= c.item_start; ++o) {
    left.push_back(render(m.items[c.item_start - o]));
  }
  std::vector<std::string> right;
  for (std::size_t o = 0; o < kWindow && c.item_end + o < n; ++o) {
    right.push_back(render(m.items[c.item_end + o]));
  }

  for (std::size_t k = 1; k <= kMaxGram && k <= left.size(); ++k) {
    std::vector<std::string> gram(left.rend() - static_cast<std::ptrdiff_t>(k), left.rend());
    f.push_back("L" + std::to_string(k) + ":" + join(gram));
  }
  for (std::size_t k = 1; k <= kMaxGram && k <= right.size(); ++k) {
    std::vector<std::string> gram(right.begin(), right.begin() + static_cast<std::ptrdiff_t>(k));
    f.push_back("R" + std::to_string(k) + ":" + join(gram));
  }
  for (std::size_t o = 2; o <= left.size(); ++o) {
    f.push_back("L@" + std::to_string(o) + ":" + left[o - 1]);
    if (o + 1 <= left.size()) {
      f.push_back("L@" + std::to_string(o) + "b:" + left[o] + " " + left[o - 1]);
    }
  }
  for (std::size_t o = 2; o <= right.size(); ++o) {
    f.push_back("R@" + std::to_string(o) + ":" + right[o - 1]);
    if (o + 1 <= right.size()) {
      f.push_back("R@" + std::to_string(o) + "b:" + right[o - 1] + " " + right[o]);
    }
  }

  for (std::size_t o = 1; o <= kBagWindow && o <= c.item_start; ++o) {
    f.push_back("Lw:" + render(m.items[c.item_start - o]));
  }
  for (std::size_t o = 0; o < kBagWindow && c.item_end + o < n; ++o) {
    f.push_back("Rw:" + render(m.items[c.item_end + o]));
  }

  static constexpr const char *kBuckets[] = {"first", "middle", "last"};
  std::size_t third = n == 0 ? 0 : std::min<std::size_t>(2, c.item_start * 3 / n);
  f.push_back(std::string("pos:") + kBuckets[third]);

  switch (c.kind) {
    case CandidateKind::kChem: f.push_back("kind:chem"); break;
    case CandidateKind::kNum: f.push_back("kind:num"); break;
    case CandidateKind::kLexicon:
      f.push_back("kind:lex");
      f.push_back("lex:" + normalize_argument(c.value));
      break;
  }

  if (!condition_product) {
    f.push_back("cond:none");
  } else {
    const std::string target = normalize_argument(*condition_product);
    f.push_back(normalize_argument(c.value) == target ? "cond:eq" : "cond:ne");
    std::optional<std::size_t> best;
    std::size_t best_pos = 0;
    for (std::size_t e = 0; e < m.entities.size(); ++e) {
      if (m.entities[e].kind != EntityKind::kChem) continue;
      if (normalize_argument(m.entities[e].value) != target) continue;
      std::size_t pos = m.entity_item[e];
      std::size_t d = pos >= c.item_start ? pos - c.item_start : c.item_start - pos;
      if (!best || d < *best) {
        best = d;
        best_pos = pos;
      }
    }
    if (best) {
      f.push_back("cdist:" + distance_bucket(*best));
      if (*best > 0) f.push_back(best_pos < c.item_start ? "cdir:before" : "cdir:after");
    } else {
      f.push_back("cdist:none");
    }
  }

  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

}  // namespace rxnie
