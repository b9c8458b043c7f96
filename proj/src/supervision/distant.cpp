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

#include "json.hpp"
#include "rxnie/error.hpp"
#include "rxnie/extractor.hpp"
#include "rxnie/supervision.hpp"
#include "rxnie/util.hpp"

namespace rxnie {
namespace {

using json = nlohmann::json;

std::vector<std::string> string_list(const json &j, const char *key, std::size_t line) {
  auto fail = [&](const std::string &what) {
    throw Error(ErrorCode::kParseError, "line " + std::to_string(line) + ": " + what);
  };
  if (!j.contains(key)) fail(std::string("missing field '") + key + "'");
  const json &arr = j[key];
  if (!arr.is_array()) fail(std::string("field '") + key + "' is not a list");
  std::vector<std::string> out;
  for (const json &v : arr) {
    if (!v.is_string()) fail(std::string("non-string entry in '") + key + "'");
    std::string s = v.get<std::string>();
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
  }
  return out;
}

// Answers in reading order: by first case-insensitive occurrence in `text`.
std::vector<std::string> in_reading_order(std::vector<std::string> answers, std::string_view text) {
  std::stable_sort(answers.begin(), answers.end(), [&](const std::string &a, const std::string &b) {
    return find_ci(text, a) < find_ci(text, b);
  });
  return answers;
}

}  // namespace

std::vector<PatentRecord> parse_patent_records(std::string_view jsonl) {
  std::vector<PatentRecord> out;
  std::size_t line_no = 0;
  for (std::string_view line : split(jsonl, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": not a JSON object");
    }
    PatentRecord r;
    for (const char *key : {"id", "text"}) {
      if (!j.contains(key) || !j[key].is_string()) {
        throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) +
                                                ": missing string field '" + key + "'");
      }
    }
    r.id = j["id"].get<std::string>();
    r.text = j["text"].get<std::string>();
    r.product = string_list(j, "product", line_no);
    r.reactants = string_list(j, "reactants", line_no);
    r.catalysts = string_list(j, "catalysts", line_no);
    r.solvents = string_list(j, "solvents", line_no);
    if (r.product.empty()) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": empty product list");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<PatentRecord> load_patent_records(const std::filesystem::path &path) {
  return parse_patent_records(read_file(path));
}

FilterResult filter_patent_records(const std::vector<PatentRecord> &records) {
  FilterResult res;
  res.stats.input_count = records.size();
  for (const PatentRecord &r : records) {
    std::size_t words = split_whitespace(r.text).size();
    if (words < kMinPatentWords) {
      ++res.stats.dropped_short;
      continue;
    }
    if (words > kMaxPatentWords) {
      ++res.stats.dropped_long;
      continue;
    }
    bool all_present = true;
    for (const auto *list : {&r.product, &r.reactants, &r.catalysts, &r.solvents}) {
      for (const std::string &arg : *list) all_present = all_present && contains_ci(r.text, arg);
    }
    if (!all_present) {
      ++res.stats.dropped_missing_arg;
      continue;
    }
    ++res.stats.kept;
    res.kept.push_back(r);
  }
  return res;
}

std::vector<QAExample> patent_to_qa(const std::vector<PatentRecord> &kept) {
  std::vector<QAExample> out;
  for (const PatentRecord &r : kept) {
    QAExample prod;
    prod.role = Role::kProduct;
    prod.doc_id = r.id;
    prod.context = r.text;
    prod.question = question_for_role(Role::kProduct, std::nullopt);
    prod.answers = in_reading_order(r.product, r.text);
    const std::vector<std::string> products = prod.answers;
    out.push_back(std::move(prod));
    for (const std::string &product : products) {
      const std::pair<Role, const std::vector<std::string> *> roles[] = {
          {Role::kReactant, &r.reactants},
          {Role::kCatalyst, &r.catalysts},
          {Role::kSolvent, &r.solvents},
      };
      for (auto [role, list] : roles) {
        QAExample ex;
        ex.role = role;
        ex.doc_id = r.id;
        ex.context = r.text;
        ex.condition_product = product;
        ex.question = question_for_role(role, product);
        ex.answers = in_reading_order(*list, r.text);
        out.push_back(std::move(ex));
      }
    }
  }
  return out;
}

}  // namespace rxnie
