//
// Copyright 2026 The Hyperbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef HYPERBOUND_ERRORS_H_
#define HYPERBOUND_ERRORS_H_

#include <optional>
#include <string_view>

#include "absl/status/status.h"

namespace hyperbound {

// Domain-level failure categories. Each one maps onto a canonical absl status
// code and is attached to the status as a payload so callers can branch on it
// without parsing messages.
enum class ErrorKind {
  kDuplicateEdgeId,
  kEmptyOwnerList,
  kUnknownVertex,
  kMissingWeight,
  kInvalidConfig,
  kCapacityViolation,
  kTooLarge,
  kInfeasibleInput,
  kInstanceMismatch,
  kMalformedLine,
  kIntegerOverflow,
  kUnsatisfiable,
  kIo,
};

std::string_view ErrorKindName(ErrorKind kind);

absl::Status MakeError(ErrorKind kind, std::string_view message);

// Returns the kind attached by MakeError, or nullopt for foreign statuses.
std::optional<ErrorKind> GetErrorKind(const absl::Status& status);

inline bool HasErrorKind(const absl::Status& status, ErrorKind kind) {
  return GetErrorKind(status) == kind;
}

}  // namespace hyperbound

#endif  // HYPERBOUND_ERRORS_H_
