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

#include "hyperbound/errors.h"

#include <array>
#include <string>

#include "absl/strings/cord.h"
#include "src/strings.h"

namespace hyperbound {
namespace {

constexpr char kErrorKindUrl[] = "hyperbound/error-kind";

struct KindInfo {
  ErrorKind kind;
  std::string_view name;
  absl::StatusCode code;
};

constexpr std::array<KindInfo, 13> kKinds = {{
    {ErrorKind::kDuplicateEdgeId, "DuplicateEdgeId",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kEmptyOwnerList, "EmptyOwnerList",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kUnknownVertex, "UnknownVertex", absl::StatusCode::kNotFound},
    {ErrorKind::kMissingWeight, "MissingWeight",
     absl::StatusCode::kFailedPrecondition},
    {ErrorKind::kInvalidConfig, "InvalidConfig",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kCapacityViolation, "CapacityViolation",
     absl::StatusCode::kInternal},
    {ErrorKind::kTooLarge, "TooLarge", absl::StatusCode::kOutOfRange},
    {ErrorKind::kInfeasibleInput, "InfeasibleInput",
     absl::StatusCode::kFailedPrecondition},
    {ErrorKind::kInstanceMismatch, "InstanceMismatch",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kMalformedLine, "MalformedLine",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kIntegerOverflow, "IntegerOverflow",
     absl::StatusCode::kOutOfRange},
    {ErrorKind::kUnsatisfiable, "Unsatisfiable",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kIo, "Io", absl::StatusCode::kUnavailable},
}};

const KindInfo& Info(ErrorKind kind) {
  for (const KindInfo& info : kKinds) {
    if (info.kind == kind) return info;
  }
  return kKinds.back();
}

}  // namespace

std::string_view ErrorKindName(ErrorKind kind) { return Info(kind).name; }

absl::Status MakeError(ErrorKind kind, std::string_view message) {
  const KindInfo& info = Info(kind);
  absl::Status status(info.code, internal::StrCat(info.name, ": ", message));
  status.SetPayload(kErrorKindUrl, absl::Cord(std::string(info.name)));
  return status;
}

std::optional<ErrorKind> GetErrorKind(const absl::Status& status) {
  auto payload = status.GetPayload(kErrorKindUrl);
  if (!payload.has_value()) return std::nullopt;
  const std::string name(*payload);
  for (const KindInfo& info : kKinds) {
    if (info.name == name) return info.kind;
  }
  return std::nullopt;
}

}  // namespace hyperbound
