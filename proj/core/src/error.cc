// Copyright 2026 The QuadArg Authors
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

#include "quadarg/error.h"

namespace quadarg {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidId: return "InvalidId";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kDanglingEndpoint: return "DanglingEndpoint";
    case ErrorCode::kSelfRelation: return "SelfRelation";
    case ErrorCode::kDuplicateRelation: return "DuplicateRelation";
    case ErrorCode::kCycleDetected: return "CycleDetected";
    case ErrorCode::kWeightOutOfRange: return "WeightOutOfRange";
    case ErrorCode::kMissingWeight: return "MissingWeight";
    case ErrorCode::kEmptyText: return "EmptyText";
    case ErrorCode::kUnknownArgument: return "UnknownArgument";
    case ErrorCode::kOutOfRangeInput: return "OutOfRangeInput";
    case ErrorCode::kMalformedXml: return "MalformedXml";
    case ErrorCode::kMalformedGraphFile: return "MalformedGraphFile";
    case ErrorCode::kUnknownEntailmentValue: return "UnknownEntailmentValue";
    case ErrorCode::kConflictingArgumentText: return "ConflictingArgumentText";
    case ErrorCode::kUnknownGraphName: return "UnknownGraphName";
    case ErrorCode::kDuplicateExemplar: return "DuplicateExemplar";
    case ErrorCode::kNotAPermutation: return "NotAPermutation";
    case ErrorCode::kMismatchedArgumentSets: return "MismatchedArgumentSets";
    case ErrorCode::kAllUndefined: return "AllUndefined";
    case ErrorCode::kExemplarCountMismatch: return "ExemplarCountMismatch";
    case ErrorCode::kUnresolvedPlaceholder: return "UnresolvedPlaceholder";
    case ErrorCode::kTransportError: return "TransportError";
    case ErrorCode::kRateLimited: return "RateLimited";
    case ErrorCode::kAuthMissing: return "AuthMissing";
    case ErrorCode::kTimeoutExceeded: return "TimeoutExceeded";
    case ErrorCode::kReplayMiss: return "ReplayMiss";
    case ErrorCode::kMissingRanking: return "MissingRanking";
    case ErrorCode::kUnknownArgumentId: return "UnknownArgumentId";
    case ErrorCode::kMissingAdjacency: return "MissingAdjacency";
    case ErrorCode::kEmptyAfterRejection: return "EmptyAfterRejection";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace quadarg
