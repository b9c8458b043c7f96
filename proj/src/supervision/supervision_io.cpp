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

#include "json.hpp"
#include "rxnie/error.hpp"
#include "rxnie/supervision.hpp"
#include "rxnie/util.hpp"

namespace rxnie {

using json = nlohmann::json;

std::string serialize_qa_examples(const std::vector<QAExample> &examples) {
  std::string out;
  for (const QAExample &ex : examples) {
    json j;
    j["doc_id"] = ex.doc_id;
    j["role"] = std::string(role_name(ex.role));
    j["question"] = ex.question;
    j["context"] = ex.context;
    j["answers"] = ex.answers;
    j["condition_product"] = ex.condition_product ? json(*ex.condition_product) : json(nullptr);
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<QAExample> parse_qa_examples(std::string_view jsonl) {
  std::vector<QAExample> out;
  std::size_t line_no = 0;
  for (std::string_view line : split(jsonl, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fail = [&](const std::string &what) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": " + what);
    };
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) fail("not a JSON object");
    for (const char *key : {"doc_id", "role", "question", "context"}) {
      if (!j.contains(key) || !j[key].is_string()) fail(std::string("missing string field '") + key + "'");
    }
    if (!j.contains("answers") || !j["answers"].is_array()) fail("missing list field 'answers'");
    QAExample ex;
    ex.doc_id = j["doc_id"].get<std::string>();
    auto role = try_parse_role(j["role"].get<std::string>());
    if (!role) fail("unknown role");
    ex.role = *role;
    ex.question = j["question"].get<std::string>();
    ex.context = j["context"].get<std::string>();
    for (const json &a : j["answers"]) {
      if (!a.is_string()) fail("non-string answer");
      ex.answers.push_back(a.get<std::string>());
    }
    if (j.contains("condition_product") && j["condition_product"].is_string()) {
      ex.condition_product = j["condition_product"].get<std::string>();
    }
    if (ex.condition_product.has_value() == (ex.role == Role::kProduct)) {
      fail("condition_product must be present exactly for non-product roles");
    }
    out.push_back(std::move(ex));
  }
  return out;
}

std::vector<QAExample> load_qa_examples(const std::filesystem::path &path) {
  return parse_qa_examples(read_file(path));
}

std::string serialize_weak_labels(const std::vector<WeakLabel> &labels) {
  std::string out;
  for (const WeakLabel &l : labels) {
    json j;
    j["doc_id"] = l.doc_id;
    j["role"] = std::string(role_name(l.role));
    j["argument_entity"] = l.argument_entity;
    j["argument_text"] = l.argument_text;
    if (l.provenance.kind == Provenance::Kind::kPattern) {
      j["provenance"] = {{"pattern", l.provenance.pattern_id}};
    } else {
      j["provenance"] = {{"model", l.provenance.score}};
    }
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

std::string serialize_dataset_stats(const DatasetStats &stats) {
  json j = {
      {"input_count", stats.input_count},
      {"kept", stats.kept},
      {"dropped_short", stats.dropped_short},
      {"dropped_long", stats.dropped_long},
      {"dropped_missing_arg", stats.dropped_missing_arg},
  };
  return j.dump(2) + "\n";
}

}  // namespace rxnie
