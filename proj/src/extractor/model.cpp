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

#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

#include "json.hpp"
#include "rxnie/error.hpp"
#include "rxnie/extractor.hpp"
#include "rxnie/pipeline.hpp"
#include "rxnie/util.hpp"

namespace rxnie {
namespace {

using json = nlohmann::json;

constexpr std::string_view kFormatName = "rxnie-extractor";

}  // namespace

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

double RoleWeights::margin(const FeatureVector &f) const {
  double z = bias;
  for (const std::string &name : f) {
    auto it = weights.find(name);
    if (it != weights.end()) z += it->second;
  }
  return z;
}

double ExtractorModel::score(Role role, const FeatureVector &f) const {
  auto it = roles.find(role);
  if (it == roles.end()) {
    throw Error(ErrorCode::kUntrainedRole,
                "model has no weights for role " + std::string(role_name(role)));
  }
  return sigmoid(it->second.margin(f));
}

double logistic_loss(const RoleWeights &w, const TrainingInstance &x) {
  // log(1 + e^z) - y z, written to stay finite for large |z|.
  double z = w.margin(x.features);
  double softplus = z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
  return softplus - x.label * z;
}

Gradient logistic_gradient(const RoleWeights &w, const TrainingInstance &x) {
  double residual = sigmoid(w.margin(x.features)) - x.label;
  Gradient g;
  g.bias = residual;
  for (const std::string &name : x.features) g.weights[name] += residual;
  return g;
}

std::vector<TrainingInstance> instances_for_example(const QAExample &ex, const MaskedText &m) {
  std::set<std::string> answers;
  for (const std::string &a : ex.answers) answers.insert(normalize_argument(a));
  std::vector<TrainingInstance> out;
  for (const Candidate &c : generate_candidates(ex.role, m)) {
    TrainingInstance inst;
    inst.features = featurize(c, m, ex.condition_product);
    bool hit = answers.count(normalize_argument(c.value)) > 0 ||
               answers.count(normalize_argument(c.entity_value)) > 0;
    inst.label = hit ? 1.0 : 0.0;
    out.push_back(std::move(inst));
  }
  return out;
}

ExtractorModel train(const std::vector<QAExample> &examples,
                     const std::vector<MaskedText> &masked_corpus, const Hyper &hyper,
                     double threshold, TrainingReport *report) {
  if (examples.empty()) throw Error(ErrorCode::kEmptyTrainingSet, "no training examples");
  std::unordered_map<std::string, const MaskedText *> by_id;
  for (const MaskedText &m : masked_corpus) by_id.emplace(m.doc_id, &m);

  std::map<Role, std::vector<TrainingInstance>> data;
  for (const QAExample &ex : examples) {
    auto it = by_id.find(ex.doc_id);
    if (it == by_id.end()) throw Error(ErrorCode::kUnknownDocument, ex.doc_id);
    auto inst = instances_for_example(ex, *it->second);
    auto &bucket = data[ex.role];
    for (auto &x : inst) bucket.push_back(std::move(x));
  }

  ExtractorModel model;
  model.hyper = hyper;
  model.threshold = threshold;
  for (auto &[role, instances] : data) {
    if (instances.empty()) continue;
    RoleWeights w;
    auto mean_loss = [&] {
      double total = 0.0;
      for (const TrainingInstance &x : instances) total += logistic_loss(w, x);
      return total / static_cast<double>(instances.size());
    };
    TrainingReport::RoleLoss loss;
    loss.instances = instances.size();
    loss.initial_loss = mean_loss();

    Rng rng(hyper.seed + static_cast<std::uint64_t>(role));
    std::vector<std::size_t> order(instances.size());
    std::iota(order.begin(), order.end(), 0);
    for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
      rng.shuffle(order);
      for (std::size_t idx : order) {
        const TrainingInstance &x = instances[idx];
        double step = hyper.learning_rate * (sigmoid(w.margin(x.features)) - x.label);
        w.bias -= step;
        for (const std::string &name : x.features) w.weights[name] -= step;
      }
    }
    loss.final_loss = mean_loss();
    if (report != nullptr) report->roles[role] = loss;
    model.roles.emplace(role, std::move(w));
  }
  if (model.roles.empty()) {
    throw Error(ErrorCode::kEmptyTrainingSet, "examples produced no candidate instances");
  }
  return model;
}

std::vector<ScoredCandidate> score_candidates(const ExtractorModel &model, Role role,
                                              const MaskedText &m,
                                              const std::optional<std::string> &condition_product) {
  if (!model.trained(role)) {
    throw Error(ErrorCode::kUntrainedRole,
                "model has no weights for role " + std::string(role_name(role)));
  }
  std::vector<ScoredCandidate> out;
  for (Candidate &c : generate_candidates(role, m)) {
    double s = model.score(role, featurize(c, m, condition_product));
    out.push_back({std::move(c), s});
  }
  return out;
}

std::vector<AnswerSpan> predict(const ExtractorModel &model, Role role, const MaskedText &m,
                                const std::optional<std::string> &condition_product) {
  std::vector<AnswerSpan> out;
  for (ScoredCandidate &sc : score_candidates(model, role, m, condition_product)) {
    if (sc.score < model.threshold) continue;
    AnswerSpan a;
    a.value = std::move(sc.candidate.value);
    if (sc.candidate.entity_index >= 0) a.entity_index = sc.candidate.entity_index;
    a.score = sc.score;
    out.push_back(std::move(a));
  }
  return out;
}

std::string serialize_model(const ExtractorModel &model) {
  json j;
  j["format"] = kFormatName;
  j["version"] = kModelFormatVersion;
  j["threshold"] = model.threshold;
  j["hyper"] = {{"epochs", model.hyper.epochs},
                {"learning_rate", model.hyper.learning_rate},
                {"seed", model.hyper.seed}};
  json roles = json::object();
  for (const auto &[role, w] : model.roles) {
    json weights = json::object();
    for (const auto &[name, value] : w.weights) weights[name] = value;
    roles[std::string(role_name(role))] = {{"bias", w.bias}, {"weights", std::move(weights)}};
  }
  j["roles"] = std::move(roles);
  return j.dump(1) + "\n";
}

ExtractorModel parse_model(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  auto fail = [](const std::string &what) { throw Error(ErrorCode::kParseError, "model: " + what); };
  if (j.is_discarded() || !j.is_object()) fail("not a JSON object");
  if (!j.contains("format") || j["format"] != kFormatName) fail("unknown format");
  if (!j.contains("version") || !j["version"].is_number_integer() ||
      j["version"].get<int>() != kModelFormatVersion) {
    fail("unsupported version");
  }
  try {
    ExtractorModel model;
    model.threshold = j.at("threshold").get<double>();
    if (!(model.threshold >= 0.0 && model.threshold <= 1.0)) fail("threshold outside [0, 1]");
    const json &h = j.at("hyper");
    model.hyper.epochs = h.at("epochs").get<int>();
    model.hyper.learning_rate = h.at("learning_rate").get<double>();
    model.hyper.seed = h.at("seed").get<std::uint64_t>();
    for (const auto &[name, body] : j.at("roles").items()) {
      auto role = try_parse_role(name);
      if (!role) fail("unknown role " + name);
      RoleWeights w;
      w.bias = body.at("bias").get<double>();
      for (const auto &[feat, value] : body.at("weights").items()) w.weights[feat] = value.get<double>();
      model.roles.emplace(*role, std::move(w));
    }
    return model;
  } catch (const json::exception &e) {
    fail(e.what());
  }
  return {};
}

void save_model(const ExtractorModel &model, const std::filesystem::path &path) {
  write_file_atomic(path, serialize_model(model));
}

ExtractorModel load_model(const std::filesystem::path &path) {
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::kUntrainedRole, "no trained model at " + path.string());
  }
  return parse_model(read_file(path));
}

}  // namespace rxnie
