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

#include "rxnie/corpus.hpp"
#include "rxnie/error.hpp"
#include "rxnie/resources.hpp"
#include "rxnie/util.hpp"

namespace rxnie {

std::pair<std::size_t, std::size_t> MaskedText::char_span(std::size_t first,
                                                          std::size_t last) const {
  if (first >= last || last > items.size()) return {0, 0};
  return {tokens[items[first].token_start].char_start,
          tokens[items[last - 1].token_end - 1].char_end};
}

Gazetteer::Gazetteer(const std::vector<std::string> &names) {
  for (const std::string &name : names) {
    std::vector<std::string> key;
    for (const Token &t : tokenize(name)) key.push_back(to_lower_ascii(t.surface));
    if (key.empty()) continue;
    max_len_ = std::max(max_len_, key.size());
    entries_.insert(std::move(key));
  }
}

Gazetteer Gazetteer::parse(std::string_view contents) {
  std::vector<std::string> names;
  for (std::string_view line : split(contents, '\n')) {
    std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    names.emplace_back(t);
  }
  return Gazetteer(names);
}

Gazetteer Gazetteer::load(const std::filesystem::path &path) { return parse(read_file(path)); }

const Gazetteer &Gazetteer::builtin() {
  static const Gazetteer g = parse(resources::kGazetteer);
  return g;
}

std::size_t Gazetteer::longest_match(const std::vector<Token> &tokens, std::size_t start) const {
  std::size_t best = 0;
  std::vector<std::string> key;
  for (std::size_t len = 1; len <= max_len_ && start + len <= tokens.size(); ++len) {
    key.push_back(to_lower_ascii(tokens[start + len - 1].surface));
    if (entries_.count(key) > 0) best = len;
  }
  return best;
}

MaskedText mask(std::string doc_id, const std::vector<Token> &tokens,
                const std::vector<EntityTag> &tags) {
  std::vector<std::size_t> order(tags.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return tags[a].token_start < tags[b].token_start;
  });
  std::size_t prev_end = 0;
  for (std::size_t k : order) {
    const EntityTag &t = tags[k];
    if (t.token_end <= t.token_start || t.token_end > tokens.size() || t.token_start < prev_end) {
      throw Error(ErrorCode::kOverlappingTags,
                  "tag [" + std::to_string(t.token_start) + "," + std::to_string(t.token_end) +
                      ") overlaps a previous tag or leaves the token range in " + doc_id);
    }
    prev_end = t.token_end;
  }

  MaskedText m;
  m.doc_id = std::move(doc_id);
  m.tokens = tokens;
  std::size_t next_tag = 0;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (next_tag < order.size() && tags[order[next_tag]].token_start == i) {
      const EntityTag &t = tags[order[next_tag]];
      MaskItem item;
      item.kind = t.kind == EntityKind::kChem ? MaskKind::kChem : MaskKind::kNum;
      item.entity_index = static_cast<int>(m.entities.size());
      item.token_start = t.token_start;
      item.token_end = t.token_end;
      m.entity_item.push_back(m.items.size());
      m.entities.push_back(t);
      m.items.push_back(std::move(item));
      i = t.token_end;
      ++next_tag;
      continue;
    }
    MaskItem item;
    item.kind = MaskKind::kWord;
    item.normalized = tokens[i].normalized;
    item.token_start = i;
    item.token_end = i + 1;
    m.items.push_back(std::move(item));
    ++i;
  }
  return m;
}

MaskedText mask_document(const Document &doc, const Gazetteer &gazetteer) {
  std::vector<Token> tokens = tokenize(doc.text);
  std::vector<EntityTag> tags = tag_entities(tokens, gazetteer, doc.text);
  return mask(doc.id, tokens, tags);
}

std::vector<MaskedText> mask_corpus(const std::vector<Document> &docs,
                                    const Gazetteer &gazetteer) {
  std::vector<MaskedText> out;
  out.reserve(docs.size());
  for (const Document &d : docs) out.push_back(mask_document(d, gazetteer));
  return out;
}

std::string render_masked(const MaskedText &m) {
  std::string out;
  for (const MaskItem &item : m.items) {
    if (!out.empty()) out.push_back(' ');
    switch (item.kind) {
      case MaskKind::kWord: out += item.normalized; break;
      case MaskKind::kChem: out += "[Chem]"; break;
      case MaskKind::kNum: out += "[Num]"; break;
    }
  }
  return out;
}

}  // namespace rxnie
