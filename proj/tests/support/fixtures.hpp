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

#ifndef RXNIE_TESTS_SUPPORT_FIXTURES_HPP_
#define RXNIE_TESTS_SUPPORT_FIXTURES_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rxnie/bootstrap.hpp"
#include "rxnie/corpus.hpp"

namespace rxnie::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string &tag = "rxnie");
  ~TempDir();
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;

  const std::filesystem::path &path() const { return path_; }
  std::filesystem::path operator/(const std::string &name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

void write_text(const std::filesystem::path &path, const std::string &contents);

/// Paragraph in the style of the classic "to obtain 5e" example: FeCl3
/// catalyst, a solvent, temperature, time and yield cues.
Document oxidation_paragraph(const std::string &id = "fig1");

/// Ingests `count` synthetic documents and installs the shipped seeds.
Workspace seeded_synthetic_workspace(const std::filesystem::path &root, std::size_t count,
                                     std::uint64_t seed);

}  // namespace rxnie::testing

#endif  // RXNIE_TESTS_SUPPORT_FIXTURES_HPP_
