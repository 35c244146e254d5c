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

#include "offload/error.h"

namespace offload {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kNegativeCost: return "NegativeCost";
    case ErrorCode::kBothComputationCostsInfinite:
      return "BothComputationCostsInfinite";
    case ErrorCode::kPinConflict: return "PinConflict";
    case ErrorCode::kPinViolation: return "PinViolation";
    case ErrorCode::kNotInGroundSet: return "NotInGroundSet";
    case ErrorCode::kAlreadyInSet: return "AlreadyInSet";
    case ErrorCode::kGroundSetTooLarge: return "GroundSetTooLarge";
    case ErrorCode::kNotApplicable: return "NotApplicable";
    case ErrorCode::kEmptyGraph: return "EmptyGraph";
    case ErrorCode::kSizeGuard: return "SizeGuard";
    case ErrorCode::kTooManyEdges: return "TooManyEdges";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kSchemaError: return "SchemaError";
  }
  return "Unknown";
}

}  // namespace offload
