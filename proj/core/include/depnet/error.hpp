// Copyright 2026 The depnet Authors.
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

#ifndef DEPNET_ERROR_HPP
#define DEPNET_ERROR_HPP

#include <stdexcept>
#include <string>

namespace depnet {

enum class ErrorCode {
  DuplicateId,
  DanglingParent,
  SelfLoop,
  UnknownEndpoint,
  UnknownNode,
  EmptySelection,
  BadRow,
  UnknownEdgeKind,
  ParseError,
  MissingBegin,
  InvalidParameter,
  DegenerateTail,
  EmptyTail,
  EmptyDistribution,
  InsufficientPoints,
  EmptyGraph,
  IncompletePartition,
  NodeSetMismatch,
  IoError,
};

const char* to_string(ErrorCode code);

/// All library failures surface as this exception; `code()` identifies the
/// contract that was violated and the message carries context (ids, line
/// numbers, positions).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace depnet

#endif  // DEPNET_ERROR_HPP
