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

// Rule-based chemical and number tagging. Precedence per token position:
// gazetteer (longest match), then formula / suffix morphology runs, then
// compound labels next to a cue word, then plain numbers.

#include <algorithm>
#include <array>
#include <string>
#include <unordered_set>

#include "rxnie/corpus.hpp"
#include "rxnie/util.hpp"

namespace rxnie {
namespace {

constexpr std::array<std::string_view, 118> kElements = {
    "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg", "Al", "Si", "P",
    "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn",
    "Ga", "Ge", "As", "Se", "Br", "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh",
    "Pd", "Ag", "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd",
    "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf", "Ta", "W",  "Re",
    "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th",
    "Pa", "U",  "Np", "Pu", "Am", "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db",
    "Sg", "Bh", "Hs", "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og",
};

// Single-symbol tokens that are far more often English words.
const std::unordered_set<std::string_view> kSymbolWords = {
    "In", "At", "As", "He", "No", "Be", "Am", "Es", "La", "Pa", "Ne", "Ho", "Ga", "Md",
    "Re", "Pr", "Ts", "Mt", "Db", "Co",
};

constexpr std::array<std::string_view, 15> kChemSuffixes = {
    "ane", "ene", "yne", "ol",  "al",  "one", "ide",   "ate",
    "ite", "ium", "yl",  "oxy", "amine", "amide", "ose",
};

// Common English words that happen to end in a chemical suffix.
const std::unordered_set<std::string_view> kSuffixStopwords = {
    // -al
    "several", "general", "final", "total", "usual", "initial", "additional", "potential",
    "crucial", "equal", "normal", "typical", "chemical", "original", "trial", "material",
    "approval", "removal", "interval", "signal", "thermal", "optimal", "minimal", "global",
    "local", "natural", "critical", "identical", "practical", "individual", "physical",
    "terminal", "central", "animal", "real", "deal", "meal", "goal", "seal", "oval", "crystal",
    "spiral", "formal", "overall", "neutral", "internal", "external", "radical", "partial",
    "literal", "lateral", "dual", "arrival", "retrieval", "medal", "metal", "manual", "annual",
    "several", "essential", "substantial", "experimental", "theoretical", "classical",
    "electrochemical", "photochemical", "biological", "technical", "special", "actual",
    "principal", "personal", "mental", "dental", "portal", "total", "vital", "royal", "loyal",
    "digital", "horizontal", "vertical", "residual", "marginal", "nominal", "optional",
    "conventional", "functional", "structural", "industrial", "commercial", "universal",
    "reversal", "dispersal", "disposal", "proposal", "rival", "survival", "renewal", "tidal",
    // -ol / -one / -ene / -ane / -yne
    "control", "protocol", "symbol", "patrol", "pool", "school", "tool", "cool", "wool", "stool",
    "idol", "alone", "stone", "phone", "none", "done", "gone", "bone", "zone", "tone", "someone",
    "anyone", "everyone", "scene", "gene", "plane", "lane", "crane", "mundane", "humane",
    "membrane", "insane", "arcane", "hurricane",
    // -ate
    "state", "plate", "create", "indicate", "generate", "evaluate", "isolate", "separate",
    "investigate", "demonstrate", "illustrate", "accelerate", "facilitate", "activate",
    "estimate", "concentrate", "approximate", "moderate", "accurate", "adequate", "elevate",
    "ultimate", "saturate", "immediate", "appropriate", "date", "late", "gate", "template",
    "candidate", "update", "climate", "private", "delicate", "elaborate", "accommodate",
    "anticipate", "calculate", "designate", "eliminate", "formulate", "incorporate",
    "initiate", "integrate", "manipulate", "modulate", "operate", "participate", "regulate",
    "simulate", "stimulate", "terminate", "translate", "validate", "correlate", "deviate",
    "dictate", "inflate", "locate", "migrate", "mitigate", "navigate", "negate", "originate",
    "populate", "propagate", "relate", "replicate", "rotate", "tolerate", "consolidate",
    "deactivate", "quantitate", "accumulate", "considerate", "intermediate", "aggregate",
    "deliberate", "alternate", "desperate", "fortunate", "unfortunate", "inadequate",
    "inaccurate", "intricate", "legitimate", "adequate", "innate", "ornate", "sedate",
    "create", "debate", "estate", "rate", "mate", "fate", "hate", "skate", "slate", "crate",
    // -ide / -ite
    "provide", "decide", "guide", "side", "wide", "divide", "inside", "outside", "beside",
    "alongside", "coincide", "override", "slide", "bride", "pride", "ride", "tide", "hide",
    "aside", "reside", "preside", "worldwide", "nationwide", "quite", "white", "write", "site",
    "despite", "suite", "unite", "invite", "favorite", "opposite", "composite", "requisite",
    "prerequisite", "elite", "spite", "polite", "definite", "infinite", "rewrite", "excite",
    "ignite", "recite", "bite", "kite",
    // -ose / -amine / -ium / -oxy / -yl
    "those", "whose", "purpose", "close", "chose", "suppose", "propose", "expose", "dose",
    "loose", "nose", "rose", "pose", "compose", "dispose", "impose", "oppose", "verbose",
    "diagnose", "choose", "goose", "prose", "repose", "morose", "examine", "determine",
    "medium", "equilibrium", "premium", "stadium", "podium", "consortium", "millennium",
    "compendium", "tedium", "proxy", "idyl",
};

const std::unordered_set<std::string_view> kUnits = {
    "%",   "°C",  "°F",   "℃",      "K",     "h",    "hr",    "hrs",  "hours", "hour", "min",
    "mins", "minutes", "minute", "s",  "sec", "seconds", "second", "d", "day", "days",
    "mL", "ml",  "L",    "µL",     "μL",    "uL",   "mg",    "g",    "kg",    "µg",   "mmol",
    "mol", "µmol", "M",  "mM",     "N",     "equiv", "equiv.", "eq",  "eq.",   "OC",   "oC",
    "bar", "atm", "psi",  "Torr",   "mbar",  "ppm",  "wt",    "vol",  "nm",    "W",    "kV",
};

// Cue words that license a bare compound label ("conversion of 13").
const std::unordered_set<std::string_view> kLabelCuesBefore = {
    "compound", "product", "of",   "afford", "afforded", "obtain",
    "yield",    "give",    "gave", "to",     "with",     "treatment",
};
// Verb cues that may also follow the label ("13 afforded ...").
const std::unordered_set<std::string_view> kLabelCuesAfter = {
    "afford", "afforded", "obtain", "yield", "give", "gave",
};

// Head nouns that continue a chemical name ("benzyl ester").
const std::unordered_set<std::string_view> kClassNouns = {
    "ester",  "acid",    "salt",  "alcohol",  "aldehyde", "ether",
    "adduct", "complex", "hydrate", "derivative", "analogue", "analog",
};

bool is_element(std::string_view sym) {
  return std::find(kElements.begin(), kElements.end(), sym) != kElements.end();
}

bool upper(char c) { return c >= 'A' && c <= 'Z'; }
bool lower(char c) { return c >= 'a' && c <= 'z'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

// Counts element groups in s[i..] if the remainder parses as a formula;
// returns -1 otherwise. Two-letter symbols are tried first, with fallback.
int parse_formula(std::string_view s, std::size_t i, bool *has_digit) {
  if (i == s.size()) return 0;
  if (!upper(s[i])) return -1;
  for (std::size_t len : {2u, 1u}) {
    if (len == 2 && (i + 1 >= s.size() || !lower(s[i + 1]))) continue;
    if (!is_element(s.substr(i, len))) continue;
    std::size_t j = i + len;
    bool digits = false;
    while (j < s.size() && digit(s[j])) {
      ++j;
      digits = true;
    }
    bool rest_digit = false;
    int rest = parse_formula(s, j, &rest_digit);
    if (rest >= 0) {
      *has_digit = digits || rest_digit;
      return rest + 1;
    }
  }
  return -1;
}

bool is_numeric_part(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t int_start = i;
  while (i < s.size() && digit(s[i])) ++i;
  if (i == int_start) return false;
  if (i < s.size() && s[i] == '.') {
    ++i;
    std::size_t frac_start = i;
    while (i < s.size() && digit(s[i])) ++i;
    if (i == frac_start) return false;
  }
  return i == s.size();
}

bool is_chemish(const Token &t) {
  return !is_unit_token(t.surface) && !is_numeric_token(t.surface) &&
         (looks_like_formula(t.surface) || has_chemical_suffix(t.surface));
}

}  // namespace

bool is_unit_token(std::string_view surface) { return kUnits.count(surface) > 0; }

bool is_numeric_token(std::string_view s) {
  if (is_numeric_part(s)) return true;
  // Ranges: "60-80", "60–80".
  for (std::string_view dash : {std::string_view("-"), std::string_view("\xE2\x80\x93")}) {
    std::size_t from = (!s.empty() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
    std::size_t pos = s.find(dash, from);
    if (pos != std::string_view::npos && pos > 0 && is_numeric_part(s.substr(0, pos)) &&
        is_numeric_part(s.substr(pos + dash.size()))) {
      return true;
    }
  }
  return false;
}

bool looks_like_formula(std::string_view s) {
  if (s.size() < 2 || is_unit_token(s)) return false;
  bool has_digit = false;
  int groups = parse_formula(s, 0, &has_digit);
  if (groups <= 0) return false;
  if (groups == 1 && !has_digit && kSymbolWords.count(s) > 0) return false;
  return true;
}

bool has_chemical_suffix(std::string_view surface) {
  if (surface.empty() || !(lower(surface.back()) || upper(surface.back()))) return false;
  std::string w = to_lower_ascii(surface);
  if (kSuffixStopwords.count(w) > 0 || is_unit_token(surface)) return false;
  // Chemical names may carry locants ("2-methylpropan-1-ol"), but the word
  // must be mostly letters.
  std::size_t letters = 0;
  for (char c : w) letters += lower(c) ? 1 : 0;
  if (letters * 2 < w.size()) return false;
  for (std::string_view suf : kChemSuffixes) {
    if (w.size() >= suf.size() + 2 && w.compare(w.size() - suf.size(), suf.size(), suf) == 0) {
      return true;
    }
  }
  return false;
}

bool is_compound_label(std::string_view s) {
  if (s.empty() || s.size() > 4) return false;
  std::size_t i = 0;
  while (i < s.size() && digit(s[i])) ++i;
  if (i == 0) return false;
  if (i == s.size()) return true;
  return i + 1 == s.size() && lower(s[i]);
}

std::vector<EntityTag> tag_entities(const std::vector<Token> &tokens, const Gazetteer &gazetteer,
                                    std::string_view text) {
  std::vector<EntityTag> tags;
  const std::size_t n = tokens.size();
  auto followed_by_unit = [&](std::size_t i) {
    return i + 1 < n && is_unit_token(tokens[i + 1].surface);
  };
  auto emit = [&](EntityKind kind, std::size_t b, std::size_t e) {
    EntityTag tag;
    tag.kind = kind;
    tag.token_start = b;
    tag.token_end = e;
    std::size_t cb = tokens[b].char_start;
    tag.value = std::string(text.substr(cb, tokens[e - 1].char_end - cb));
    tags.push_back(std::move(tag));
  };

  std::size_t i = 0;
  while (i < n) {
    if (std::size_t g = gazetteer.longest_match(tokens, i); g > 0) {
      emit(EntityKind::kChem, i, i + g);
      i += g;
      continue;
    }
    const Token &tok = tokens[i];
    if (is_chemish(tok)) {
      std::size_t j = i + 1;
      while (j < n && gazetteer.longest_match(tokens, j) == 0 &&
             (is_chemish(tokens[j]) || kClassNouns.count(tokens[j].normalized) > 0)) {
        ++j;
      }
      if (j < n && is_compound_label(tokens[j].surface) && !followed_by_unit(j)) ++j;
      emit(EntityKind::kChem, i, j);
      i = j;
      continue;
    }
    if (is_compound_label(tok.surface) && !followed_by_unit(i)) {
      bool cue_before = i > 0 && kLabelCuesBefore.count(tokens[i - 1].normalized) > 0;
      bool cue_after = i + 1 < n && kLabelCuesAfter.count(tokens[i + 1].normalized) > 0;
      if (cue_before || cue_after) {
        emit(EntityKind::kChem, i, i + 1);
        ++i;
        continue;
      }
    }
    if (is_numeric_token(tok.surface)) emit(EntityKind::kNum, i, i + 1);
    ++i;
  }
  return tags;
}

}  // namespace rxnie
