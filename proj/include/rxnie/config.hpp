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

// Flat "key = value" configuration. Blank lines and lines starting with '#'
// are ignored; unknown keys are errors. Keys:
//
//   workspace, corpus, gazetteer, seeds, patents, gold   paths
//   iterations, n_min, n_max, min_freq, top_k_per_role
//   review_mode              interactive | auto
//   auto_accept_precision, negative_ratio, seed, threshold
//   epochs, learning_rate, model_seed                    extractor training
//   linguistic_roles         comma-separated role names

#ifndef RXNIE_CONFIG_HPP_
#define RXNIE_CONFIG_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "rxnie/bootstrap.hpp"

namespace rxnie {

struct AppConfig {
  BootstrapConfig bootstrap;
  std::optional<std::filesystem::path> workspace;
  std::optional<std::filesystem::path> corpus;
  std::optional<std::filesystem::path> gazetteer;
  std::optional<std::filesystem::path> seeds;
  std::optional<std::filesystem::path> patents;
  std::optional<std::filesystem::path> gold;
};

/// Applies one key to `config`; throws Usage on unknown keys or bad values.
void apply_config_value(AppConfig &config, std::string_view key, std::string_view value);

/// Parses on top of the compiled-in defaults. Relative paths resolve
/// against `base_dir`.
AppConfig parse_config(std::string_view text, const std::filesystem::path &base_dir = {});
AppConfig load_config(const std::filesystem::path &path);

/// Canonical rendering; parse_config(render_config(c)) == c.
std::string render_config(const AppConfig &config);

}  // namespace rxnie

#endif  // RXNIE_CONFIG_HPP_
