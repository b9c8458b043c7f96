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

#include <unordered_set>

#include "json.hpp"
#include "rxnie/corpus.hpp"
#include "rxnie/error.hpp"
#include "rxnie/util.hpp"

namespace rxnie {
namespace {

using json = nlohmann::json;

DocumentSource parse_source(const std::string &s, std::size_t line) {
  if (s == "journal") return DocumentSource::kJournal;
  if (s == "patent") return DocumentSource::kPatent;
  if (s == "fixture") return DocumentSource::kFixture;
  throw Error(ErrorCode::kParseError,
              "line " + std::to_string(line) + ": unknown source '" + s + "'");
}

}  // namespace

std::string_view source_name(DocumentSource s) {
  switch (s) {
    case DocumentSource::kJournal: return "journal";
    case DocumentSource::kPatent: return "patent";
    case DocumentSource::kFixture: return "fixture";
  }
  return "fixture";
}

std::vector<Document> parse_corpus(std::string_view jsonl) {
  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  std::size_t line_no = 0;
  for (std::string_view line : split(jsonl, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fail = [&](const std::string &what) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": " + what);
    };
    json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) fail("not a JSON object");
    for (const char *key : {"id", "text", "source"}) {
      if (!j.contains(key) || !j[key].is_string()) fail(std::string("missing string field '") + key + "'");
    }
    Document d;
    d.id = j["id"].get<std::string>();
    d.text = j["text"].get<std::string>();
    d.source = parse_source(j["source"].get<std::string>(), line_no);
    if (d.id.empty()) fail("empty id");
    if (d.text.empty()) fail("empty text");
    if (!seen.insert(d.id).second) throw Error(ErrorCode::kDuplicateId, d.id);
    docs.push_back(std::move(d));
  }
  return docs;
}

std::vector<Document> load_corpus(const std::filesystem::path &path) {
  return parse_corpus(read_file(path));
}

std::string serialize_corpus(const std::vector<Document> &docs) {
  std::string out;
  for (const Document &d : docs) {
    json j = {{"id", d.id}, {"source", std::string(source_name(d.source))}, {"text", d.text}};
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

}  // namespace rxnie
