// Copyright 2026 The morphoseg Authors.
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

#include "morphoseg/error.h"

namespace morphoseg {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kCorpusTooSmall: return "CorpusTooSmall";
    case ErrorCode::kInvalidCounts: return "InvalidCounts";
    case ErrorCode::kUnknownChar: return "UnknownChar";
    case ErrorCode::kCaseFoldMismatch: return "CaseFoldMismatch";
    case ErrorCode::kNotTrained: return "NotTrained";
    case ErrorCode::kInvalidId: return "InvalidId";
    case ErrorCode::kEmptySentence: return "EmptySentence";
    case ErrorCode::kTargetTooSmall: return "TargetTooSmall";
    case ErrorCode::kInconsistentModel: return "InconsistentModel";
    case ErrorCode::kInconsistentNetwork: return "InconsistentNetwork";
    case ErrorCode::kEmptyWord: return "EmptyWord";
    case ErrorCode::kEmptyEval: return "EmptyEval";
    case ErrorCode::kAlignmentError: return "AlignmentError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUsageError: return "UsageError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace morphoseg
