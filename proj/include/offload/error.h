// Copyright 2026 The Offload Authors
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

#ifndef OFFLOAD_ERROR_H_
#define OFFLOAD_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace offload {

enum class ErrorCode {
  kIndexOutOfRange,
  kNegativeCost,
  kBothComputationCostsInfinite,
  kPinConflict,
  kPinViolation,
  kNotInGroundSet,
  kAlreadyInSet,
  kGroundSetTooLarge,
  kNotApplicable,
  kEmptyGraph,
  kSizeGuard,
  kTooManyEdges,
  kInvalidArgument,
  kIoError,
  kParseError,
  kSchemaError,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this type. `detail()` carries
// the payload some codes need (JSON pointer for kSchemaError, line number
// for kParseError).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string detail = {})
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code),
        detail_(std::move(detail)) {}

  ErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace offload

#endif  // OFFLOAD_ERROR_H_
