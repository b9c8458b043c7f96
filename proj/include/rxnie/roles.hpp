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

#ifndef RXNIE_ROLES_HPP_
#define RXNIE_ROLES_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace rxnie {

// The eight-role reaction scheme. Declaration order is the canonical order
// used for sorting and serialization.
enum class Role {
  kProduct,
  kReactant,
  kCatalyst,
  kSolvent,
  kTemperature,
  kTime,
  kReactionType,
  kYield,
};

inline constexpr std::array<Role, 8> kAllRoles = {
    Role::kProduct,     Role::kReactant, Role::kCatalyst,     Role::kSolvent,
    Role::kTemperature, Role::kTime,     Role::kReactionType, Role::kYield,
};

// Which entity placeholder carries a role's argument.
enum class ArgumentKind { kChem, kNum, kLexicon };

/// Wire name, e.g. "reaction_type".
std::string_view role_name(Role role);
/// Noun used inside role questions, e.g. "reaction type".
std::string_view role_noun(Role role);
ArgumentKind argument_kind(Role role);

std::optional<Role> try_parse_role(std::string_view name);
/// Throws Error(kUnknownRole).
Role parse_role(std::string_view name);

}  // namespace rxnie

#endif  // RXNIE_ROLES_HPP_
