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

#ifndef MORPHOSEG_ERROR_H_
#define MORPHOSEG_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace morphoseg {

enum class ErrorCode {
  kEmptyCorpus,
  kCorpusTooSmall,
  kInvalidCounts,
  kUnknownChar,
  kCaseFoldMismatch,
  kNotTrained,
  kInvalidId,
  kEmptySentence,
  kTargetTooSmall,
  kInconsistentModel,
  kInconsistentNetwork,
  kEmptyWord,
  kEmptyEval,
  kAlignmentError,
  kInvalidArgument,
  kParseError,
  kUsageError,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception type. The code
// decides the process exit status in the command-line tool.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse failures carry the offending 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line,
             const std::string& message)
      : Error(ErrorCode::kParseError,
              source + ":" + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace morphoseg

#endif  // MORPHOSEG_ERROR_H_
