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

// Two-step extraction (products first, then every other role conditioned on
// each product) and the precision / recall / F1 harness.

#ifndef RXNIE_PIPELINE_HPP_
#define RXNIE_PIPELINE_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rxnie/corpus.hpp"
#include "rxnie/extractor.hpp"
#include "rxnie/roles.hpp"

namespace rxnie {

/// Lowercases, collapses whitespace, trims, then strips trailing sentence
/// punctuation and one layer of enclosing brackets.
std::string normalize_argument(std::string_view s);

/// Role -> arguments. Always holds exactly one product; absent roles have
/// no key, so no list is ever empty.
struct StructuredReaction {
  std::string source_doc_id;
  std::map<Role, std::vector<std::string>> pairs;

  const std::string &product() const { return pairs.at(Role::kProduct).front(); }
  bool operator==(const StructuredReaction &) const = default;
};

/// Gold and prediction files share this shape.
struct AnnotatedDocument {
  std::string doc_id;
  std::vector<StructuredReaction> reactions;
};

/// Product answers, deduplicated by normalized form, reading order.
/// Throws UntrainedRole.
std::vector<std::string> extract_products(const ExtractorModel &model, const MaskedText &doc);

/// Queries every non-product role the model was trained for. Throws
/// MissingCondition on an empty product and UntrainedRole when the model
/// knows no non-product role.
StructuredReaction extract_reaction(const ExtractorModel &model, const MaskedText &doc,
                                    const std::string &product);

/// One reaction per extracted product.
std::vector<StructuredReaction> extract_all(const ExtractorModel &model, const MaskedText &doc);

/// Same as extract_all but conditioned on the given products.
std::vector<StructuredReaction> extract_for_products(const ExtractorModel &model,
                                                     const MaskedText &doc,
                                                     const std::vector<std::string> &products);

struct Counts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  double precision() const;
  double recall() const;
  double f1() const;
  Counts &operator+=(const Counts &o);
  bool operator==(const Counts &) const = default;
};

enum class Conditioning { kGoldProducts, kPredicted };
std::string_view conditioning_name(Conditioning c);
/// Accepts "gold", "gold_products" and "predicted"; throws Usage otherwise.
Conditioning parse_conditioning(std::string_view s);

struct EvalReport {
  std::string task;  // "products" or "roles"
  std::optional<Conditioning> conditioning;
  std::map<Role, Counts> per_role;
  Counts overall;
};

using ProductLists = std::map<std::string, std::vector<std::string>>;
using ReactionLists = std::map<std::string, std::vector<StructuredReaction>>;

/// Per document, greedy exact matching of normalized strings; a document
/// missing on one side counts as empty.
EvalReport evaluate_products(const ProductLists &preds, const ProductLists &gold);

/// Reactions are aligned by normalized product; (role, argument) pairs of
/// the non-product roles are then matched within each aligned pair.
/// Unaligned predictions are all false positives, unaligned gold all misses.
EvalReport evaluate_roles(const ReactionLists &preds, const ReactionLists &gold,
                          Conditioning conditioning);

ProductLists products_of(const std::vector<AnnotatedDocument> &docs);
ReactionLists reactions_of(const std::vector<AnnotatedDocument> &docs);

std::string serialize_reactions(const std::vector<AnnotatedDocument> &docs);
/// Throws ParseError when a reaction lacks exactly one product, has an
/// empty role list, or names an unknown role; DuplicateId on repeated docs.
std::vector<AnnotatedDocument> parse_reactions(std::string_view jsonl);
std::vector<AnnotatedDocument> load_reactions(const std::filesystem::path &path);

std::string serialize_report_json(const EvalReport &report);
/// Fixed-width P/R/F table, percentages with one decimal.
std::string render_report_table(const EvalReport &report);

}  // namespace rxnie

#endif  // RXNIE_PIPELINE_HPP_
