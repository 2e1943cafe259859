// Copyright 2026 The Scribe Authors
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

#include "scribe/error.h"

namespace scribe {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDegenerateTrace: return "DegenerateTrace";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kBandInfeasible: return "BandInfeasible";
    case ErrorCode::kEmptyClass: return "EmptyClass";
    case ErrorCode::kUnknownLabel: return "UnknownLabel";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kCorruptStore: return "CorruptStore";
    case ErrorCode::kNotADistribution: return "NotADistribution";
    case ErrorCode::kMissingClass: return "MissingClass";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kZeroVariance: return "ZeroVariance";
    case ErrorCode::kMissingTrajectories: return "MissingTrajectories";
    case ErrorCode::kBadRequest: return "BadRequest";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kIncompleteSession: return "IncompleteSession";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace scribe
