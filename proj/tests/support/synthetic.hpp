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

// Synthetic reaction paragraphs with planted cue templates.
//
// Every reaction paragraph states one product, a yield, a temperature and a
// time. Each of the four cues is drawn either from the shipped seed patterns
// or from 12 hidden templates per role that the bootstrap has to discover.
// A share of paragraphs describe no reaction at all.

#ifndef RXNIE_TESTS_SUPPORT_SYNTHETIC_HPP_
#define RXNIE_TESTS_SUPPORT_SYNTHETIC_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "rxnie/corpus.hpp"
#include "rxnie/pipeline.hpp"
#include "rxnie/roles.hpp"

namespace rxnie::testing {

struct HiddenTemplate {
  Role role;
  std::string pattern;  // pattern-file syntax, one argument slot
};

/// The 48 hidden templates: 12 each for product, yield, temperature, time.
const std::vector<HiddenTemplate> &hidden_templates();

struct SyntheticOptions {
  double seed_share = 0.35;           // chance a cue comes from the seed set
  double yield_after_product = 0.7;   // yield cue directly follows the product
  double no_reaction_share = 0.1;     // paragraphs without any reaction
  double distractor_rate = 0.6;       // chance of each distractor sentence
};

struct SyntheticDocument {
  Document doc;
  std::vector<StructuredReaction> gold;  // empty for no-reaction paragraphs
};

std::vector<SyntheticDocument> generate_corpus(std::size_t count, std::uint64_t seed,
                                               const SyntheticOptions &options = {},
                                               const std::string &id_prefix = "syn");

std::vector<Document> documents_of(const std::vector<SyntheticDocument> &docs);
std::vector<AnnotatedDocument> gold_of(const std::vector<SyntheticDocument> &docs);

}  // namespace rxnie::testing

#endif  // RXNIE_TESTS_SUPPORT_SYNTHETIC_HPP_
