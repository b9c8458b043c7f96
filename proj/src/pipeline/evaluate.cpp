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

#include <cstdio>
#include <set>
#include <utility>

#include "json.hpp"
#include "rxnie/error.hpp"
#include "rxnie/pipeline.hpp"
#include "rxnie/util.hpp"

namespace rxnie {
namespace {

using json = nlohmann::json;

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

// Greedy multiset match: each gold item is consumed at most once.
Counts match_multiset(const std::vector<std::string> &pred, const std::vector<std::string> &gold) {
  std::multiset<std::string> pool(gold.begin(), gold.end());
  Counts c;
  for (const std::string &p : pred) {
    auto it = pool.find(p);
    if (it != pool.end()) {
      pool.erase(it);
      ++c.tp;
    } else {
      ++c.fp;
    }
  }
  c.fn = pool.size();
  return c;
}

std::vector<std::string> normalized(const std::vector<std::string> &v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const std::string &s : v) out.push_back(normalize_argument(s));
  return out;
}

std::set<std::string> doc_ids(const auto &a, const auto &b) {
  std::set<std::string> ids;
  for (const auto &[id, _] : a) ids.insert(id);
  for (const auto &[id, _] : b) ids.insert(id);
  return ids;
}

template <typename Map>
const typename Map::mapped_type &lookup(const Map &m, const std::string &id) {
  static const typename Map::mapped_type kEmpty{};
  auto it = m.find(id);
  return it == m.end() ? kEmpty : it->second;
}

// Adds every non-product pair of `r` to fp (or fn) of its role.
void count_unaligned(const StructuredReaction &r, bool predicted, EvalReport &report) {
  for (const auto &[role, args] : r.pairs) {
    if (role == Role::kProduct) continue;
    Counts c;
    (predicted ? c.fp : c.fn) = args.size();
    report.per_role[role] += c;
  }
}

}  // namespace

double Counts::precision() const { return ratio(tp, tp + fp); }
double Counts::recall() const { return ratio(tp, tp + fn); }
double Counts::f1() const {
  double p = precision();
  double r = recall();
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

Counts &Counts::operator+=(const Counts &o) {
  tp += o.tp;
  fp += o.fp;
  fn += o.fn;
  return *this;
}

std::string_view conditioning_name(Conditioning c) {
  return c == Conditioning::kGoldProducts ? "gold_products" : "predicted";
}

Conditioning parse_conditioning(std::string_view s) {
  if (s == "gold" || s == "gold_products") return Conditioning::kGoldProducts;
  if (s == "predicted") return Conditioning::kPredicted;
  throw Error(ErrorCode::kUsage, "conditioning must be gold or predicted, got '" + std::string(s) + "'");
}

EvalReport evaluate_products(const ProductLists &preds, const ProductLists &gold) {
  EvalReport report;
  report.task = "products";
  Counts total;
  for (const std::string &id : doc_ids(preds, gold)) {
    total += match_multiset(normalized(lookup(preds, id)), normalized(lookup(gold, id)));
  }
  report.per_role[Role::kProduct] = total;
  report.overall = total;
  return report;
}

EvalReport evaluate_roles(const ReactionLists &preds, const ReactionLists &gold,
                          Conditioning conditioning) {
  EvalReport report;
  report.task = "roles";
  report.conditioning = conditioning;
  for (const std::string &id : doc_ids(preds, gold)) {
    const auto &p = lookup(preds, id);
    const auto &g = lookup(gold, id);
    std::vector<bool> gold_used(g.size(), false);
    for (const StructuredReaction &pr : p) {
      const std::string key = normalize_argument(pr.product());
      std::size_t match = g.size();
      for (std::size_t j = 0; j < g.size(); ++j) {
        if (!gold_used[j] && normalize_argument(g[j].product()) == key) {
          match = j;
          break;
        }
      }
      if (match == g.size()) {
        count_unaligned(pr, true, report);
        continue;
      }
      gold_used[match] = true;
      const StructuredReaction &gr = g[match];
      std::set<Role> roles;
      for (const auto &[role, _] : pr.pairs) roles.insert(role);
      for (const auto &[role, _] : gr.pairs) roles.insert(role);
      roles.erase(Role::kProduct);
      for (Role role : roles) {
        auto pit = pr.pairs.find(role);
        auto git = gr.pairs.find(role);
        static const std::vector<std::string> kNone;
        report.per_role[role] += match_multiset(normalized(pit == pr.pairs.end() ? kNone : pit->second),
                                                normalized(git == gr.pairs.end() ? kNone : git->second));
      }
    }
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (!gold_used[j]) count_unaligned(g[j], false, report);
    }
  }
  for (const auto &[_, c] : report.per_role) report.overall += c;
  return report;
}

ProductLists products_of(const std::vector<AnnotatedDocument> &docs) {
  ProductLists out;
  for (const AnnotatedDocument &d : docs) {
    auto &list = out[d.doc_id];
    for (const StructuredReaction &r : d.reactions) list.push_back(r.product());
  }
  return out;
}

ReactionLists reactions_of(const std::vector<AnnotatedDocument> &docs) {
  ReactionLists out;
  for (const AnnotatedDocument &d : docs) {
    auto &list = out[d.doc_id];
    list.insert(list.end(), d.reactions.begin(), d.reactions.end());
  }
  return out;
}

std::string serialize_reactions(const std::vector<AnnotatedDocument> &docs) {
  std::string out;
  for (const AnnotatedDocument &d : docs) {
    json reactions = json::array();
    for (const StructuredReaction &r : d.reactions) {
      json obj = json::object();
      for (const auto &[role, args] : r.pairs) obj[std::string(role_name(role))] = args;
      reactions.push_back(std::move(obj));
    }
    json line = {{"doc_id", d.doc_id}, {"reactions", std::move(reactions)}};
    out += line.dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<AnnotatedDocument> parse_reactions(std::string_view jsonl) {
  std::vector<AnnotatedDocument> out;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  for (std::string_view line : split(jsonl, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fail = [&](const std::string &what) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": " + what);
    };
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) fail("not a JSON object");
    if (!j.contains("doc_id") || !j["doc_id"].is_string()) fail("missing string field 'doc_id'");
    if (!j.contains("reactions") || !j["reactions"].is_array()) fail("missing list field 'reactions'");
    AnnotatedDocument doc;
    doc.doc_id = j["doc_id"].get<std::string>();
    if (!seen.insert(doc.doc_id).second) throw Error(ErrorCode::kDuplicateId, doc.doc_id);
    for (const json &rj : j["reactions"]) {
      if (!rj.is_object()) fail("reaction is not an object");
      StructuredReaction r;
      r.source_doc_id = doc.doc_id;
      for (const auto &[key, value] : rj.items()) {
        auto role = try_parse_role(key);
        if (!role) fail("unknown role '" + key + "'");
        if (!value.is_array() || value.empty()) fail("role '" + key + "' needs a nonempty list");
        std::vector<std::string> args;
        for (const json &a : value) {
          if (!a.is_string()) fail("non-string argument for '" + key + "'");
          args.push_back(a.get<std::string>());
        }
        r.pairs[*role] = std::move(args);
      }
      auto prod = r.pairs.find(Role::kProduct);
      if (prod == r.pairs.end() || prod->second.size() != 1) fail("reaction needs exactly one product");
      doc.reactions.push_back(std::move(r));
    }
    out.push_back(std::move(doc));
  }
  return out;
}

std::vector<AnnotatedDocument> load_reactions(const std::filesystem::path &path) {
  return parse_reactions(read_file(path));
}

std::string serialize_report_json(const EvalReport &report) {
  auto counts_json = [](const Counts &c) {
    return json{{"tp", c.tp},
                {"fp", c.fp},
                {"fn", c.fn},
                {"precision", c.precision()},
                {"recall", c.recall()},
                {"f1", c.f1()}};
  };
  json j;
  j["task"] = report.task;
  if (report.conditioning) j["conditioning"] = std::string(conditioning_name(*report.conditioning));
  json roles = json::object();
  for (const auto &[role, c] : report.per_role) roles[std::string(role_name(role))] = counts_json(c);
  j["per_role"] = std::move(roles);
  j["overall"] = counts_json(report.overall);
  return j.dump(2) + "\n";
}

std::string render_report_table(const EvalReport &report) {
  std::string out;
  char buf[160];
  auto row = [&](std::string_view name, const Counts &c) {
    std::snprintf(buf, sizeof buf, "%-14.*s %6zu %6zu %6zu %7.1f %7.1f %7.1f\n",
                  static_cast<int>(name.size()), name.data(), c.tp, c.fp, c.fn,
                  100.0 * c.precision(), 100.0 * c.recall(), 100.0 * c.f1());
    out += buf;
  };
  std::snprintf(buf, sizeof buf, "%-14s %6s %6s %6s %7s %7s %7s\n", "role", "tp", "fp", "fn",
                "P (%)", "R (%)", "F (%)");
  out += buf;
  for (const auto &[role, c] : report.per_role) row(role_name(role), c);
  row("overall", report.overall);
  return out;
}

}  // namespace rxnie
