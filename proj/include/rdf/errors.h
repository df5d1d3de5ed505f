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

#ifndef RDF_ERRORS_H_
#define RDF_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace rdf {

enum class ErrorCode {
  kParse,
  kSchemaViolation,
  kUnknownLabel,
  kIndexOutOfOrder,
  kTooFewPoints,
  kAlreadyTrained,
  kUntrained,
  kBadDelta,
  kBadRate,
  kBadEta,
  kNotAdjacent,
  kSpaceTooLarge,
  kDomain,
  kEmptyInput,
  kConfig,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// True for failures caused by the input data rather than by the caller's
// configuration.
bool IsDataError(ErrorCode code);

}  // namespace rdf

#endif  // RDF_ERRORS_H_
