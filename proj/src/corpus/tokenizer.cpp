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

#include <utility>
#include <vector>

#include "rxnie/corpus.hpp"
#include "rxnie/util.hpp"

namespace rxnie {
namespace {

using Span = std::pair<std::size_t, std::size_t>;

// Length in bytes of a whitespace character at text[i], 0 if none. Covers
// ASCII whitespace plus the no-break and thin spaces common in typeset
// chemistry ("60 °C").
std::size_t whitespace_len(std::string_view text, std::size_t i) {
  unsigned char c = static_cast<unsigned char>(text[i]);
  if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') return 1;
  if (c == 0xC2 && i + 1 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0xA0) {
    return 2;
  }
  if (c == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x80) {
    unsigned char d = static_cast<unsigned char>(text[i + 2]);
    if ((d >= 0x80 && d <= 0x8A) || d == 0xAF) return 3;
  }
  return 0;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_opener(char c) { return c == '(' || c == '[' || c == '{'; }
bool is_closer(char c) { return c == ')' || c == ']' || c == '}'; }
bool is_simple_punct(char c) {
  return c == ',' || c == ';' || c == ':' || c == '.' || c == '!' || c == '?' || c == '"';
}

// Index of the closer balancing the opener at `open`, or npos.
std::size_t matching_closer(std::string_view t, std::size_t open, std::size_t end) {
  int depth = 0;
  for (std::size_t i = open; i < end; ++i) {
    if (is_opener(t[i])) ++depth;
    if (is_closer(t[i]) && --depth == 0) return i;
  }
  return std::string_view::npos;
}

bool has_matching_opener(std::string_view t, std::size_t begin, std::size_t close) {
  int depth = 0;
  for (std::size_t i = close + 1; i-- > begin;) {
    if (is_closer(t[i])) ++depth;
    if (is_opener(t[i]) && --depth == 0) return true;
  }
  return false;
}

// Splits the inside of a segment at "%" and degree-unit boundaries.
void split_core(std::string_view t, std::size_t b, std::size_t e, std::vector<Span> &out) {
  std::size_t start = b;
  auto flush = [&](std::size_t upto) {
    if (upto > start) out.emplace_back(start, upto);
  };
  std::size_t i = b;
  while (i < e) {
    unsigned char c = static_cast<unsigned char>(t[i]);
    if (c == '%') {
      flush(i);
      out.emplace_back(i, i + 1);
      start = ++i;
    } else if (c == 0xC2 && i + 1 < e && static_cast<unsigned char>(t[i + 1]) == 0xB0) {
      // "°" plus the scale letters that follow it: "°C", "°F".
      flush(i);
      std::size_t j = i + 2;
      while (j < e && is_alpha(t[j])) ++j;
      out.emplace_back(i, j);
      start = i = j;
    } else if (c == 0xE2 && i + 2 < e && static_cast<unsigned char>(t[i + 1]) == 0x84 &&
               static_cast<unsigned char>(t[i + 2]) == 0x83) {
      // U+2103 DEGREE CELSIUS
      flush(i);
      out.emplace_back(i, i + 3);
      start = i = i + 3;
    } else {
      ++i;
    }
  }
  flush(e);
}

void split_segment(std::string_view t, std::size_t b, std::size_t e, std::vector<Span> &out) {
  std::vector<Span> prefix;
  std::vector<Span> suffix;
  bool changed = true;
  while (changed && b < e) {
    changed = false;
    char last = t[e - 1];
    char first = t[b];
    if (is_simple_punct(last)) {
      suffix.emplace_back(e - 1, e);
      --e;
      changed = true;
    } else if (is_simple_punct(first) && !(first == '.' && b + 1 < e && is_digit(t[b + 1]))) {
      prefix.emplace_back(b, b + 1);
      ++b;
      changed = true;
    } else if (is_opener(first)) {
      std::size_t m = matching_closer(t, b, e);
      if (m == std::string_view::npos) {
        prefix.emplace_back(b, b + 1);
        ++b;
        changed = true;
      } else if (m == e - 1) {
        prefix.emplace_back(b, b + 1);
        suffix.emplace_back(e - 1, e);
        ++b;
        --e;
        changed = true;
      }
    }
    if (!changed && b < e && is_closer(t[e - 1]) && !has_matching_opener(t, b, e - 1)) {
      suffix.emplace_back(e - 1, e);
      --e;
      changed = true;
    }
  }
  out.insert(out.end(), prefix.begin(), prefix.end());
  if (b < e) split_core(t, b, e, out);
  out.insert(out.end(), suffix.rbegin(), suffix.rend());
}

}  // namespace

std::string normalize_word(std::string_view surface) {
  std::string w = to_lower_ascii(surface);
  if (w == "is" || w == "are" || w == "was" || w == "were" || w == "be" || w == "been" ||
      w == "being") {
    return "be";
  }
  return w;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Span> spans;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t ws = whitespace_len(text, i);
    if (ws > 0) {
      i += ws;
      continue;
    }
    std::size_t start = i;
    while (i < text.size() && whitespace_len(text, i) == 0) ++i;
    split_segment(text, start, i, spans);
  }
  std::vector<Token> tokens;
  tokens.reserve(spans.size());
  for (auto [b, e] : spans) {
    Token tok;
    tok.surface = std::string(text.substr(b, e - b));
    tok.normalized = normalize_word(tok.surface);
    tok.char_start = b;
    tok.char_end = e;
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

}  // namespace rxnie
