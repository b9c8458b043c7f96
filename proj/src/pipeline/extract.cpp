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

#include <set>

#include "rxnie/error.hpp"
#include "rxnie/pipeline.hpp"
#include "rxnie/util.hpp"

namespace rxnie {
namespace {

bool is_closing_punct(char c) {
  return c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?';
}

char closer_for(char c) {
  switch (c) {
    case '(': return ')';
    case '[': return ']';
    case '{': return '}';
    default: return '\0';
  }
}

std::vector<std::string> dedupe_values(std::vector<AnswerSpan> spans) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (AnswerSpan &a : spans) {
    if (seen.insert(normalize_argument(a.value)).second) out.push_back(std::move(a.value));
  }
  return out;
}

}  // namespace

std::string normalize_argument(std::string_view s) {
  std::string out = collapse_whitespace(to_lower_ascii(s));
  std::string_view v = trim(out);
  while (!v.empty() && is_closing_punct(v.back())) v.remove_suffix(1);
  v = trim(v);
  if (v.size() >= 2) {
    char close = closer_for(v.front());
    if (close != '\0' && v.back() == close) v = trim(v.substr(1, v.size() - 2));
  }
  return std::string(v);
}

std::vector<std::string> extract_products(const ExtractorModel &model, const MaskedText &doc) {
  return dedupe_values(predict(model, Role::kProduct, doc, std::nullopt));
}

StructuredReaction extract_reaction(const ExtractorModel &model, const MaskedText &doc,
                                    const std::string &product) {
  if (trim(product).empty()) {
    throw Error(ErrorCode::kMissingCondition, "role extraction needs a nonempty product");
  }
  StructuredReaction r;
  r.source_doc_id = doc.doc_id;
  r.pairs[Role::kProduct] = {product};
  bool any_role = false;
  for (Role role : kAllRoles) {
    if (role == Role::kProduct || !model.trained(role)) continue;
    any_role = true;
    std::vector<std::string> values = dedupe_values(predict(model, role, doc, product));
    if (!values.empty()) r.pairs[role] = std::move(values);
  }
  if (!any_role) {
    throw Error(ErrorCode::kUntrainedRole, "model has no weights for any non-product role");
  }
  return r;
}

std::vector<StructuredReaction> extract_for_products(const ExtractorModel &model,
                                                     const MaskedText &doc,
                                                     const std::vector<std::string> &products) {
  std::vector<StructuredReaction> out;
  out.reserve(products.size());
  for (const std::string &p : products) out.push_back(extract_reaction(model, doc, p));
  return out;
}

std::vector<StructuredReaction> extract_all(const ExtractorModel &model, const MaskedText &doc) {
  return extract_for_products(model, doc, extract_products(model, doc));
}

}  // namespace rxnie
