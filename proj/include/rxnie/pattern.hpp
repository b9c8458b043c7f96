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

// Cue patterns over masked text: the textual pattern language, the window
// matcher, and the frequent n-gram miner that proposes new patterns.
//
// A pattern is a short sequence of literal words and [Chem]/[Num]
// placeholders. Exactly one placeholder is the argument slot, written with a
// trailing "!":
//
//   product      conversion of [Chem] to [Chem!]
//   yield        in [Num!] % yield

#ifndef RXNIE_PATTERN_HPP_
#define RXNIE_PATTERN_HPP_

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rxnie/corpus.hpp"
#include "rxnie/roles.hpp"

namespace rxnie {

struct PatternItem {
  enum class Kind { kLiteral, kChem, kNum };

  Kind kind = Kind::kLiteral;
  std::string word;  // normalized; literals only
  bool is_argument = false;

  static PatternItem literal(std::string w) { return {Kind::kLiteral, std::move(w), false}; }
  static PatternItem chem(bool arg) { return {Kind::kChem, {}, arg}; }
  static PatternItem num(bool arg) { return {Kind::kNum, {}, arg}; }

  bool operator==(const PatternItem &) const = default;
};

using PatternItems = std::vector<PatternItem>;

struct PatternOrigin {
  int iteration = 0;  // 0 = seed, k = enriched in bootstrap iteration k

  bool is_seed() const { return iteration == 0; }
  bool operator==(const PatternOrigin &) const = default;
};

struct Pattern {
  std::string id;
  Role role = Role::kProduct;
  PatternItems items;
  PatternOrigin origin;

  std::size_t argument_index() const;
  bool operator==(const Pattern &) const = default;
};

/// "conversion of [Chem] to [Chem!]"
std::string print_items(const PatternItems &items);
/// Identity of a pattern independent of origin: "product\tconversion of ...".
std::string pattern_key(Role role, const PatternItems &items);
Pattern make_pattern(Role role, PatternItems items, PatternOrigin origin = {});

/// Throws NoArgumentSlot, MultipleArgumentSlots, UnknownRole or KindMismatch.
Pattern parse_pattern(std::string_view role, std::string_view source_line);

struct PatternSet {
  std::vector<Pattern> patterns;
  int version = 0;

  bool contains(Role role, const PatternItems &items) const;
  /// Appends unless an equal (role, items) pattern exists; returns whether it was added.
  bool add(Pattern p);
};

/// Pattern file: "role<TAB>pattern[<TAB>origin]" lines, "#" comments.
PatternSet parse_pattern_file(std::string_view contents, int version = 0);
PatternSet load_pattern_file(const std::filesystem::path &path, int version = 0);
std::string serialize_pattern_file(const PatternSet &set);
/// The shipped seed set (data/seed_patterns.tsv).
PatternSet default_seed_patterns();

struct Match {
  std::string doc_id;
  std::size_t item_start = 0;
  std::string pattern_id;
  std::size_t pattern_index = 0;  // position in the PatternSet for match_all
  int argument_entity = -1;

  bool operator==(const Match &) const = default;
};

bool item_matches(const PatternItem &p, const MaskItem &m);
std::vector<Match> match_pattern(const Pattern &p, const MaskedText &m);
/// Pattern order, then item_start. Overlapping and duplicate windows are all kept.
std::vector<Match> match_all(const PatternSet &set, const MaskedText &m);

struct ArgumentLabel {
  Role role = Role::kProduct;
  int entity_index = -1;

  auto operator<=>(const ArgumentLabel &) const = default;
};

struct LabeledDocument {
  const MaskedText *text = nullptr;
  std::vector<ArgumentLabel> labels;
};

struct MinedCandidate {
  Role role = Role::kProduct;
  PatternItems items;
  int frequency = 0;
  std::vector<std::string> sample_doc_ids;  // at most 5, first seen first

  bool operator==(const MinedCandidate &) const = default;
};

inline constexpr int kDefaultMinNgram = 2;
inline constexpr int kDefaultMaxNgram = 6;
inline constexpr std::size_t kMaxSampleDocs = 5;

/// Every contiguous window of n_min..n_max items containing a labeled
/// argument becomes a candidate; identical (role, items) aggregate.
/// Throws InvalidRange outside 2..6 unless `allow_any_range`.
std::vector<MinedCandidate> mine_candidates(const std::vector<LabeledDocument> &docs,
                                            int n_min = kDefaultMinNgram,
                                            int n_max = kDefaultMaxNgram,
                                            bool allow_any_range = false);

/// Drops candidates already in `existing` or in `suppressed` (pattern keys),
/// candidates below `min_freq`, and candidates with an equal-frequency strict
/// sub-window among the remaining candidates. Sorted by frequency desc, length
/// asc, then role and rendered text.
std::vector<MinedCandidate> dedupe_and_filter(const std::vector<MinedCandidate> &cands,
                                              const PatternSet &existing, int min_freq,
                                              const std::set<std::string> &suppressed = {});

}  // namespace rxnie

#endif  // RXNIE_PATTERN_HPP_
