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

#include "fixtures.hpp"

#include <atomic>
#include <fstream>
#include <stdexcept>

#include <unistd.h>

#include "rxnie/pattern.hpp"
#include "synthetic.hpp"

namespace rxnie::testing {

namespace fs = std::filesystem;

TempDir::TempDir(const std::string &tag) {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          (tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

void write_text(const fs::path &path, const std::string &contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
}

Document oxidation_paragraph(const std::string &id) {
  return {id,
          "The alcohol 4e was oxidized with FeCl3 in dichloromethane at 25 °C for 2 h "
          "to obtain 5e in 85 % yield.",
          DocumentSource::kFixture};
}

Workspace seeded_synthetic_workspace(const fs::path &root, std::size_t count, std::uint64_t seed) {
  Workspace ws(root);
  ws.ingest(documents_of(generate_corpus(count, seed)));
  ws.install_seeds(default_seed_patterns());
  return ws;
}

}  // namespace rxnie::testing
