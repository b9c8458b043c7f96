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

#include "rxnie/config.hpp"

#include <charconv>

#include "rxnie/util.hpp"

namespace rxnie {
namespace {

namespace fs = std::filesystem;

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view want) {
  throw Error(ErrorCode::kUsage, "config key '" + std::string(key) + "': expected " +
                                     std::string(want) + ", got '" + std::string(value) + "'");
}

template <typename T>
T parse_integer(std::string_view key, std::string_view value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad_value(key, value, "an integer");
  return out;
}

double parse_double(std::string_view key, std::string_view value) {
  std::string s(value);
  std::size_t used = 0;
  try {
    double d = std::stod(s, &used);
    if (used == s.size()) return d;
  } catch (const std::exception &) {
  }
  bad_value(key, value, "a number");
}

// Shortest text that parses back to the same double.
std::string fmt_double(double d) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, end);
}

}  // namespace

void apply_config_value(AppConfig &config, std::string_view key, std::string_view value) {
  BootstrapConfig &b = config.bootstrap;
  if (key == "workspace") config.workspace = fs::path(value);
  else if (key == "corpus") config.corpus = fs::path(value);
  else if (key == "gazetteer") config.gazetteer = fs::path(value);
  else if (key == "seeds") config.seeds = fs::path(value);
  else if (key == "patents") config.patents = fs::path(value);
  else if (key == "gold") config.gold = fs::path(value);
  else if (key == "iterations") b.iterations = parse_integer<int>(key, value);
  else if (key == "n_min") b.n_min = parse_integer<int>(key, value);
  else if (key == "n_max") b.n_max = parse_integer<int>(key, value);
  else if (key == "min_freq") b.min_freq = parse_integer<int>(key, value);
  else if (key == "top_k_per_role") b.top_k_per_role = parse_integer<std::size_t>(key, value);
  else if (key == "review_mode") {
    if (value == "auto") b.review_mode = ReviewMode::kAuto;
    else if (value == "interactive") b.review_mode = ReviewMode::kInteractive;
    else bad_value(key, value, "interactive or auto");
  } else if (key == "auto_accept_precision") b.auto_accept_precision = parse_double(key, value);
  else if (key == "negative_ratio") b.negative_ratio = parse_double(key, value);
  else if (key == "seed") b.seed = parse_integer<std::uint64_t>(key, value);
  else if (key == "threshold") b.threshold = parse_double(key, value);
  else if (key == "epochs") b.hyper.epochs = parse_integer<int>(key, value);
  else if (key == "learning_rate") b.hyper.learning_rate = parse_double(key, value);
  else if (key == "model_seed") b.hyper.seed = parse_integer<std::uint64_t>(key, value);
  else if (key == "linguistic_roles") {
    b.linguistic_roles.clear();
    for (std::string_view part : split(value, ',')) {
      std::string_view name = trim(part);
      if (!name.empty()) b.linguistic_roles.push_back(parse_role(name));
    }
  } else {
    throw Error(ErrorCode::kUsage, "unknown config key '" + std::string(key) + "'");
  }
}

AppConfig parse_config(std::string_view text, const fs::path &base_dir) {
  AppConfig config;
  std::size_t line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kUsage, "config line " + std::to_string(line_no) + ": expected key = value");
    }
    apply_config_value(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  if (!base_dir.empty()) {
    for (auto *p : {&config.workspace, &config.corpus, &config.gazetteer, &config.seeds,
                    &config.patents, &config.gold}) {
      if (*p && p->value().is_relative()) *p = base_dir / p->value();
    }
  }
  config.bootstrap.validate();
  return config;
}

AppConfig load_config(const fs::path &path) {
  return parse_config(read_file(path), path.parent_path());
}

std::string render_config(const AppConfig &config) {
  const BootstrapConfig &b = config.bootstrap;
  std::string out;
  auto line = [&out](std::string_view key, const std::string &value) {
    out += std::string(key) + " = " + value + "\n";
  };
  auto path_line = [&line](std::string_view key, const std::optional<fs::path> &p) {
    if (p) line(key, p->string());
  };
  path_line("workspace", config.workspace);
  path_line("corpus", config.corpus);
  path_line("gazetteer", config.gazetteer);
  path_line("seeds", config.seeds);
  path_line("patents", config.patents);
  path_line("gold", config.gold);
  line("iterations", std::to_string(b.iterations));
  line("n_min", std::to_string(b.n_min));
  line("n_max", std::to_string(b.n_max));
  line("min_freq", std::to_string(b.min_freq));
  line("top_k_per_role", std::to_string(b.top_k_per_role));
  line("review_mode", b.review_mode == ReviewMode::kAuto ? "auto" : "interactive");
  line("auto_accept_precision", fmt_double(b.auto_accept_precision));
  line("negative_ratio", fmt_double(b.negative_ratio));
  line("seed", std::to_string(b.seed));
  line("threshold", fmt_double(b.threshold));
  line("epochs", std::to_string(b.hyper.epochs));
  line("learning_rate", fmt_double(b.hyper.learning_rate));
  line("model_seed", std::to_string(b.hyper.seed));
  std::string roles;
  for (Role r : b.linguistic_roles) {
    if (!roles.empty()) roles += ",";
    roles += role_name(r);
  }
  line("linguistic_roles", roles);
  return out;
}

}  // namespace rxnie
