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

#include <charconv>

#include "rxnie/error.hpp"
#include "rxnie/pattern.hpp"
#include "rxnie/resources.hpp"
#include "rxnie/util.hpp"

namespace rxnie {
namespace {

std::string placeholder_name(std::string_view tok, bool *is_arg) {
  if (tok.size() < 3 || tok.front() != '[' || tok.back() != ']') return {};
  std::string_view inner = tok.substr(1, tok.size() - 2);
  *is_arg = !inner.empty() && inner.back() == '!';
  if (*is_arg) inner.remove_suffix(1);
  return to_lower_ascii(inner);
}

std::string origin_text(const PatternOrigin &o) {
  return o.is_seed() ? "seed" : "enriched:" + std::to_string(o.iteration);
}

PatternOrigin parse_origin(std::string_view s, std::size_t line) {
  if (s == "seed") return {};
  constexpr std::string_view kPrefix = "enriched:";
  if (s.substr(0, kPrefix.size()) == kPrefix) {
    int k = 0;
    std::string_view digits = s.substr(kPrefix.size());
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && k > 0) return {k};
  }
  throw Error(ErrorCode::kParseError,
              "line " + std::to_string(line) + ": bad origin '" + std::string(s) + "'");
}

}  // namespace

std::size_t Pattern::argument_index() const {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].is_argument) return i;
  }
  return items.size();
}

std::string print_items(const PatternItems &items) {
  std::string out;
  for (const PatternItem &it : items) {
    if (!out.empty()) out.push_back(' ');
    switch (it.kind) {
      case PatternItem::Kind::kLiteral: out += it.word; break;
      case PatternItem::Kind::kChem: out += it.is_argument ? "[Chem!]" : "[Chem]"; break;
      case PatternItem::Kind::kNum: out += it.is_argument ? "[Num!]" : "[Num]"; break;
    }
  }
  return out;
}

std::string pattern_key(Role role, const PatternItems &items) {
  return std::string(role_name(role)) + "\t" + print_items(items);
}

Pattern make_pattern(Role role, PatternItems items, PatternOrigin origin) {
  Pattern p;
  p.role = role;
  p.items = std::move(items);
  p.origin = origin;
  p.id = stable_hash_hex(pattern_key(role, p.items));
  return p;
}

Pattern parse_pattern(std::string_view role_text, std::string_view source_line) {
  Role role = parse_role(trim(role_text));
  PatternItems items;
  for (std::string_view tok : split_whitespace(source_line)) {
    bool is_arg = false;
    std::string ph = placeholder_name(tok, &is_arg);
    if (ph == "chem") {
      items.push_back(PatternItem::chem(is_arg));
    } else if (ph == "num") {
      items.push_back(PatternItem::num(is_arg));
    } else {
      // Literals go through the corpus tokenizer so "85%" and "85 %" agree.
      for (const Token &t : tokenize(tok)) items.push_back(PatternItem::literal(t.normalized));
    }
  }
  std::size_t args = 0;
  const PatternItem *arg = nullptr;
  for (const PatternItem &it : items) {
    if (it.is_argument) {
      ++args;
      arg = &it;
    }
  }
  std::string shown(trim(source_line));
  if (args == 0) throw Error(ErrorCode::kNoArgumentSlot, shown);
  if (args > 1) throw Error(ErrorCode::kMultipleArgumentSlots, shown);
  ArgumentKind want = argument_kind(role);
  bool ok = (want == ArgumentKind::kChem && arg->kind == PatternItem::Kind::kChem) ||
            (want == ArgumentKind::kNum && arg->kind == PatternItem::Kind::kNum);
  if (!ok) {
    throw Error(ErrorCode::kKindMismatch,
                "argument slot of '" + shown + "' does not fit role " +
                    std::string(role_name(role)));
  }
  return make_pattern(role, std::move(items));
}

bool PatternSet::contains(Role role, const PatternItems &items) const {
  for (const Pattern &p : patterns) {
    if (p.role == role && p.items == items) return true;
  }
  return false;
}

bool PatternSet::add(Pattern p) {
  if (contains(p.role, p.items)) return false;
  patterns.push_back(std::move(p));
  return true;
}

PatternSet parse_pattern_file(std::string_view contents, int version) {
  PatternSet set;
  set.version = version;
  std::size_t line_no = 0;
  for (std::string_view line : split(contents, '\n')) {
    ++line_no;
    std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<std::string_view> cols = split(line, '\t');
    if (cols.size() < 2 || cols.size() > 3) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": expected role<TAB>pattern");
    }
    Pattern p = parse_pattern(cols[0], cols[1]);
    if (cols.size() == 3) p.origin = parse_origin(trim(cols[2]), line_no);
    set.add(std::move(p));
  }
  return set;
}

PatternSet load_pattern_file(const std::filesystem::path &path, int version) {
  return parse_pattern_file(read_file(path), version);
}

std::string serialize_pattern_file(const PatternSet &set) {
  std::string out = "# version " + std::to_string(set.version) + "\n";
  for (const Pattern &p : set.patterns) {
    out += role_name(p.role);
    out += '\t';
    out += print_items(p.items);
    out += '\t';
    out += origin_text(p.origin);
    out += '\n';
  }
  return out;
}

PatternSet default_seed_patterns() { return parse_pattern_file(resources::kSeedPatterns, 0); }

}  // namespace rxnie
