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

// Document ingestion, tokenization, heuristic chemical/number tagging and
// placeholder masking.

#ifndef RXNIE_CORPUS_HPP_
#define RXNIE_CORPUS_HPP_

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace rxnie {

enum class DocumentSource { kJournal, kPatent, kFixture };

std::string_view source_name(DocumentSource s);

struct Document {
  std::string id;
  std::string text;
  DocumentSource source = DocumentSource::kFixture;
};

struct Token {
  std::string surface;
  std::string normalized;
  std::size_t char_start = 0;  // byte offsets into Document::text
  std::size_t char_end = 0;

  bool operator==(const Token &) const = default;
};

enum class EntityKind { kChem, kNum };

struct EntityTag {
  EntityKind kind = EntityKind::kChem;
  std::size_t token_start = 0;  // half-open token range
  std::size_t token_end = 0;
  std::string value;

  bool operator==(const EntityTag &) const = default;
};

enum class MaskKind { kWord, kChem, kNum };

struct MaskItem {
  MaskKind kind = MaskKind::kWord;
  std::string normalized;      // Word items only
  int entity_index = -1;       // Chem/Num items only
  std::size_t token_start = 0; // tokens this item stands for
  std::size_t token_end = 0;

  bool operator==(const MaskItem &) const = default;
};

struct MaskedText {
  std::string doc_id;
  std::vector<MaskItem> items;
  std::vector<EntityTag> entities;
  std::vector<Token> tokens;
  std::vector<std::size_t> entity_item;  // entity index -> item index

  std::size_t size() const { return items.size(); }
  /// Byte range of the source text covered by items [first, last).
  std::pair<std::size_t, std::size_t> char_span(std::size_t first, std::size_t last) const;
};

/// Lowercase + copula folding ("was" -> "be").
std::string normalize_word(std::string_view surface);

std::vector<Token> tokenize(std::string_view text);

/// Multi-word chemical names matched case-insensitively over token surfaces.
class Gazetteer {
 public:
  Gazetteer() = default;
  explicit Gazetteer(const std::vector<std::string> &names);

  static Gazetteer parse(std::string_view contents);
  static Gazetteer load(const std::filesystem::path &path);
  /// The gazetteer shipped with the library.
  static const Gazetteer &builtin();

  /// Number of tokens of the longest entry starting at `start`, 0 if none.
  std::size_t longest_match(const std::vector<Token> &tokens, std::size_t start) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::set<std::vector<std::string>> entries_;
  std::size_t max_len_ = 0;
};

/// Unit tokens that force a preceding number to be tagged Num.
bool is_unit_token(std::string_view surface);
bool is_numeric_token(std::string_view surface);
bool looks_like_formula(std::string_view surface);
bool has_chemical_suffix(std::string_view surface);
bool is_compound_label(std::string_view surface);

std::vector<EntityTag> tag_entities(const std::vector<Token> &tokens, const Gazetteer &gazetteer,
                                    std::string_view text);

/// Throws Error(kOverlappingTags) when tags overlap or leave the token range.
MaskedText mask(std::string doc_id, const std::vector<Token> &tokens,
                const std::vector<EntityTag> &tags);

/// tokenize + tag_entities + mask.
MaskedText mask_document(const Document &doc, const Gazetteer &gazetteer);
std::vector<MaskedText> mask_corpus(const std::vector<Document> &docs, const Gazetteer &gazetteer);

/// Renders items as "word [Chem] [Num]" for display and hashing.
std::string render_masked(const MaskedText &m);

std::vector<Document> parse_corpus(std::string_view jsonl);
std::vector<Document> load_corpus(const std::filesystem::path &path);
std::string serialize_corpus(const std::vector<Document> &docs);

}  // namespace rxnie

#endif  // RXNIE_CORPUS_HPP_
