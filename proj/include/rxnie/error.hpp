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

#ifndef RXNIE_ERROR_HPP_
#define RXNIE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace rxnie {

/// Every failure the library reports. The category of a code decides the
/// process exit status of the command-line tool.
enum class ErrorCode {
  // usage
  kUsage,
  kUnknownRole,
  kMissingCondition,
  // data
  kParseError,
  kDuplicateId,
  kOverlappingTags,
  kNoArgumentSlot,
  kMultipleArgumentSlots,
  kKindMismatch,
  kInvalidRange,
  kEmptyTrainingSet,
  kUnknownDocument,
  kEmptyCorpus,
  kIo,
  // state
  kNoPatterns,
  kUntrainedRole,
  kPendingDecisions,
  kUnknownCandidate,
  kAlreadyFinalized,
  kConflictingDecision,
  kWorkspaceLocked,
  kInvalidState,
};

enum class ErrorCategory { kUsage, kData, kState };

std::string_view error_code_name(ErrorCode code);
ErrorCategory error_category(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
        code_(code),
        detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string &detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace rxnie

#endif  // RXNIE_ERROR_HPP_
