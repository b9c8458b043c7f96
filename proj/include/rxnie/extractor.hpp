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

// Question-answering style role extractor.
//
// Every role is asked as a natural-language question about the paragraph.
// The reference extractor answers by scoring each candidate span (tagged
// chemicals, numbers, or reaction-type words) with a per-role logistic
// model over sparse indicator features; every candidate scoring at or above
// the threshold is an answer, and no answer means "None".

#ifndef RXNIE_EXTRACTOR_HPP_
#define RXNIE_EXTRACTOR_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rxnie/corpus.hpp"
#include "rxnie/roles.hpp"
#include "rxnie/supervision.hpp"

namespace rxnie {

/// Throws MissingCondition when `condition_product` is absent for a
/// non-product role.
std::string question_for_role(Role role, const std::optional<std::string> &condition_product);

/// Reaction-type nouns plus the verb forms that map onto them
/// ("oxidized" -> "oxidation").
class ReactionTypeLexicon {
 public:
  static ReactionTypeLexicon parse(std::string_view lexicon, std::string_view forms);
  static const ReactionTypeLexicon &builtin();

  /// Length in items and display value of the longest entry at `pos`.
  std::optional<std::pair<std::size_t, std::string>> match(const MaskedText &m,
                                                           std::size_t pos) const;
  /// Maps a single normalized word to a lexicon noun, if any.
  std::optional<std::string> noun_for(std::string_view word) const;

 private:
  std::map<std::vector<std::string>, std::string> entries_;  // lowercase words -> display
  std::map<std::string, std::string> word_forms_;
  std::vector<std::pair<std::string, std::string>> suffix_forms_;
  std::size_t max_len_ = 0;
};

enum class CandidateKind { kChem, kNum, kLexicon };

struct Candidate {
  CandidateKind kind = CandidateKind::kChem;
  int entity_index = -1;        // kChem / kNum
  std::size_t item_start = 0;   // item range in the masked text
  std::size_t item_end = 0;
  std::string value;         // answer text; numbers carry their unit after one space ("85 %")
  std::string entity_value;  // bare entity surface, equal to value for chemicals
};

std::vector<Candidate> generate_candidates(
    Role role, const MaskedText &m,
    const ReactionTypeLexicon &lexicon = ReactionTypeLexicon::builtin());

/// Sorted, duplicate-free indicator feature names (each with value 1.0).
using FeatureVector = std::vector<std::string>;

FeatureVector featurize(const Candidate &c, const MaskedText &m,
                        const std::optional<std::string> &condition_product);

struct Hyper {
  int epochs = 5;
  double learning_rate = 0.1;
  std::uint64_t seed = 42;

  bool operator==(const Hyper &) const = default;
};

struct RoleWeights {
  std::map<std::string, double> weights;
  double bias = 0.0;

  double margin(const FeatureVector &f) const;
  bool operator==(const RoleWeights &) const = default;
};

inline constexpr double kDefaultThreshold = 0.5;

struct ExtractorModel {
  std::map<Role, RoleWeights> roles;
  double threshold = kDefaultThreshold;
  Hyper hyper;

  bool trained(Role role) const { return roles.count(role) > 0; }
  /// Sigmoid score in [0, 1]; throws UntrainedRole.
  double score(Role role, const FeatureVector &f) const;
  bool operator==(const ExtractorModel &) const = default;
};

struct TrainingInstance {
  FeatureVector features;
  double label = 0.0;  // 1 = candidate is an answer
};

double sigmoid(double z);
/// Binary cross-entropy of one instance.
double logistic_loss(const RoleWeights &w, const TrainingInstance &x);

struct Gradient {
  double bias = 0.0;
  std::map<std::string, double> weights;
};
Gradient logistic_gradient(const RoleWeights &w, const TrainingInstance &x);

struct TrainingReport {
  struct RoleLoss {
    std::size_t instances = 0;
    double initial_loss = 0.0;  // mean loss before the first update
    double final_loss = 0.0;
  };
  std::map<Role, RoleLoss> roles;
};

/// Candidate instances of one example: label 1 iff the candidate's
/// normalized value is among the normalized answers.
std::vector<TrainingInstance> instances_for_example(const QAExample &ex, const MaskedText &m);

/// Seeded SGD on per-candidate logistic loss, one model per role present in
/// `examples`. Throws EmptyTrainingSet or UnknownDocument.
ExtractorModel train(const std::vector<QAExample> &examples,
                     const std::vector<MaskedText> &masked_corpus, const Hyper &hyper = {},
                     double threshold = kDefaultThreshold, TrainingReport *report = nullptr);

struct AnswerSpan {
  std::string value;
  std::optional<int> entity_index;
  double score = 0.0;
};

struct ScoredCandidate {
  Candidate candidate;
  double score = 0.0;
};

/// Every candidate with its score, document order.
std::vector<ScoredCandidate> score_candidates(const ExtractorModel &model, Role role,
                                              const MaskedText &m,
                                              const std::optional<std::string> &condition_product);

/// Candidates scoring >= threshold, document order. Throws UntrainedRole.
std::vector<AnswerSpan> predict(const ExtractorModel &model, Role role, const MaskedText &m,
                                const std::optional<std::string> &condition_product);

inline constexpr int kModelFormatVersion = 1;

std::string serialize_model(const ExtractorModel &model);
/// Throws ParseError on malformed input or an unknown format version.
ExtractorModel parse_model(std::string_view text);
void save_model(const ExtractorModel &model, const std::filesystem::path &path);
ExtractorModel load_model(const std::filesystem::path &path);

}  // namespace rxnie

#endif  // RXNIE_EXTRACTOR_HPP_
