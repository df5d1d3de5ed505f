// Copyright 2026 The rdforest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rdf/errors.h"

namespace rdf {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kUnknownLabel: return "UnknownLabel";
    case ErrorCode::kIndexOutOfOrder: return "IndexOutOfOrder";
    case ErrorCode::kTooFewPoints: return "TooFewPoints";
    case ErrorCode::kAlreadyTrained: return "AlreadyTrained";
    case ErrorCode::kUntrained: return "Untrained";
    case ErrorCode::kBadDelta: return "BadDelta";
    case ErrorCode::kBadRate: return "BadRate";
    case ErrorCode::kBadEta: return "BadEta";
    case ErrorCode::kNotAdjacent: return "NotAdjacent";
    case ErrorCode::kSpaceTooLarge: return "SpaceTooLarge";
    case ErrorCode::kDomain: return "DomainError";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

bool IsDataError(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
    case ErrorCode::kSchemaViolation:
    case ErrorCode::kUnknownLabel:
    case ErrorCode::kIndexOutOfOrder:
    case ErrorCode::kTooFewPoints:
    case ErrorCode::kIo:
      return true;
    default:
      return false;
  }
}

}  // namespace rdf
