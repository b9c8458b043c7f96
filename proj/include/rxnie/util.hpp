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

#ifndef RXNIE_UTIL_HPP_
#define RXNIE_UTIL_HPP_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace rxnie {

// ASCII-only case folding; bytes >= 0x80 pass through untouched so UTF-8
// sequences survive.
std::string to_lower_ascii(std::string_view s);
std::string_view trim(std::string_view s);
std::string collapse_whitespace(std::string_view s);
std::vector<std::string_view> split_whitespace(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);

bool contains_ci(std::string_view haystack, std::string_view needle);
/// Byte offset of the first case-insensitive occurrence, or npos.
std::size_t find_ci(std::string_view haystack, std::string_view needle);

/// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::string stable_hash_hex(std::string_view s);

std::string read_file(const std::filesystem::path &path);
/// Writes to a sibling temp file, then renames over `path`.
void write_file_atomic(const std::filesystem::path &path, std::string_view contents);

/// Seeded generator whose output is identical across standard libraries.
/// std::uniform_int_distribution and std::shuffle are implementation-defined,
/// so sampling goes through these helpers instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [0, 1).
  double unit();

  template <typename T>
  void shuffle(std::vector<T> &v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  template <typename T>
  const T &pick(const std::vector<T> &v) {
    return v[static_cast<std::size_t>(below(v.size()))];
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rxnie

#endif  // RXNIE_UTIL_HPP_
