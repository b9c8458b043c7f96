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

// Synthetic supervision: pattern matches become weak labels and QA examples;
// patent-style structured records become QA examples after filtering.

#ifndef RXNIE_SUPERVISION_HPP_
#define RXNIE_SUPERVISION_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rxnie/corpus.hpp"
#include "rxnie/pattern.hpp"
#include "rxnie/roles.hpp"

namespace rxnie {

struct Provenance {
  enum class Kind { kPattern, kModel };

  Kind kind = Kind::kPattern;
  std::string pattern_id;  // kPattern
  double score = 0.0;      // kModel, in [0, 1]

  bool operator==(const Provenance &) const = default;
};

struct WeakLabel {
  std::string doc_id;
  Role role = Role::kProduct;
  int argument_entity = -1;
  std::string argument_text;
  Provenance provenance;

  bool operator==(const WeakLabel &) const = default;
};

struct QAExample {
  std::string question;
  std::string context;
  std::vector<std::string> answers;  // reading order; empty encodes "None"
  Role role = Role::kProduct;
  std::string doc_id;
  std::optional<std::string> condition_product;

  bool operator==(const QAExample &) const = default;
};

struct PatentRecord {
  std::string id;
  std::string text;
  std::vector<std::string> product;
  std::vector<std::string> reactants;
  std::vector<std::string> catalysts;
  std::vector<std::string> solvents;
};

struct DatasetStats {
  std::size_t input_count = 0;
  std::size_t kept = 0;
  std::size_t dropped_short = 0;
  std::size_t dropped_long = 0;
  std::size_t dropped_missing_arg = 0;
};

inline constexpr std::size_t kMinPatentWords = 8;
inline constexpr std::size_t kMaxPatentWords = 256;

/// One label per (doc, role, entity); provenance is the first match in
/// pattern order. Output follows corpus order, then match order.
std::vector<WeakLabel> weak_label(const std::vector<MaskedText> &corpus, const PatternSet &set);

/// Groups labels per document for the miner. `corpus` must outlive the result.
std::vector<LabeledDocument> to_labeled_documents(const std::vector<WeakLabel> &labels,
                                                  const std::vector<MaskedText> &corpus);

/// Positives per (doc, role) with all labeled arguments as answers; seeded
/// negatives from label-free documents at `negative_ratio` x positives per
/// role. Non-product examples are conditioned on the document's first
/// labeled product and skipped when there is none.
std::vector<QAExample> labels_to_qa(const std::vector<WeakLabel> &labels,
                                    const std::vector<Document> &docs, double negative_ratio,
                                    std::uint64_t seed);

std::vector<PatentRecord> parse_patent_records(std::string_view jsonl);
std::vector<PatentRecord> load_patent_records(const std::filesystem::path &path);

struct FilterResult {
  std::vector<PatentRecord> kept;
  DatasetStats stats;
};

/// Keeps records with 8..256 whitespace words whose every argument occurs
/// (case-insensitively) in the text.
FilterResult filter_patent_records(const std::vector<PatentRecord> &records);

/// Per record: a product example, then one conditioned example per product
/// for each of reactant, catalyst and solvent.
std::vector<QAExample> patent_to_qa(const std::vector<PatentRecord> &kept);

std::string serialize_qa_examples(const std::vector<QAExample> &examples);
std::vector<QAExample> parse_qa_examples(std::string_view jsonl);
std::vector<QAExample> load_qa_examples(const std::filesystem::path &path);

std::string serialize_weak_labels(const std::vector<WeakLabel> &labels);
std::string serialize_dataset_stats(const DatasetStats &stats);

}  // namespace rxnie

#endif  // RXNIE_SUPERVISION_HPP_
