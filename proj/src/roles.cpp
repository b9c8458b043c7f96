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

#include "rxnie/roles.hpp"

#include "rxnie/error.hpp"

namespace rxnie {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUsage: return "Usage";
    case ErrorCode::kUnknownRole: return "UnknownRole";
    case ErrorCode::kMissingCondition: return "MissingCondition";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kOverlappingTags: return "OverlappingTags";
    case ErrorCode::kNoArgumentSlot: return "NoArgumentSlot";
    case ErrorCode::kMultipleArgumentSlots: return "MultipleArgumentSlots";
    case ErrorCode::kKindMismatch: return "KindMismatch";
    case ErrorCode::kInvalidRange: return "InvalidRange";
    case ErrorCode::kEmptyTrainingSet: return "EmptyTrainingSet";
    case ErrorCode::kUnknownDocument: return "UnknownDocument";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kNoPatterns: return "NoPatterns";
    case ErrorCode::kUntrainedRole: return "UntrainedRole";
    case ErrorCode::kPendingDecisions: return "PendingDecisions";
    case ErrorCode::kUnknownCandidate: return "UnknownCandidate";
    case ErrorCode::kAlreadyFinalized: return "AlreadyFinalized";
    case ErrorCode::kConflictingDecision: return "ConflictingDecision";
    case ErrorCode::kWorkspaceLocked: return "WorkspaceLocked";
    case ErrorCode::kInvalidState: return "InvalidState";
  }
  return "Unknown";
}

ErrorCategory error_category(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUsage:
    case ErrorCode::kUnknownRole:
    case ErrorCode::kMissingCondition:
      return ErrorCategory::kUsage;
    case ErrorCode::kNoPatterns:
    case ErrorCode::kUntrainedRole:
    case ErrorCode::kPendingDecisions:
    case ErrorCode::kUnknownCandidate:
    case ErrorCode::kAlreadyFinalized:
    case ErrorCode::kConflictingDecision:
    case ErrorCode::kWorkspaceLocked:
    case ErrorCode::kInvalidState:
      return ErrorCategory::kState;
    default:
      return ErrorCategory::kData;
  }
}

std::string_view role_name(Role role) {
  switch (role) {
    case Role::kProduct: return "product";
    case Role::kReactant: return "reactant";
    case Role::kCatalyst: return "catalyst";
    case Role::kSolvent: return "solvent";
    case Role::kTemperature: return "temperature";
    case Role::kTime: return "time";
    case Role::kReactionType: return "reaction_type";
    case Role::kYield: return "yield";
  }
  return "";
}

std::string_view role_noun(Role role) {
  if (role == Role::kReactionType) return "reaction type";
  return role_name(role);
}

ArgumentKind argument_kind(Role role) {
  switch (role) {
    case Role::kTemperature:
    case Role::kTime:
    case Role::kYield:
      return ArgumentKind::kNum;
    case Role::kReactionType:
      return ArgumentKind::kLexicon;
    default:
      return ArgumentKind::kChem;
  }
}

std::optional<Role> try_parse_role(std::string_view name) {
  for (Role r : kAllRoles) {
    if (role_name(r) == name) return r;
  }
  // The scheme table spells it with a space.
  if (name == "reaction type") return Role::kReactionType;
  return std::nullopt;
}

Role parse_role(std::string_view name) {
  if (auto r = try_parse_role(name)) return *r;
  throw Error(ErrorCode::kUnknownRole, "unknown role '" + std::string(name) + "'");
}

}  // namespace rxnie
