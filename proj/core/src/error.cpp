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

#include "depnet/error.hpp"

namespace depnet {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::DanglingParent: return "DanglingParent";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::UnknownEndpoint: return "UnknownEndpoint";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::EmptySelection: return "EmptySelection";
    case ErrorCode::BadRow: return "BadRow";
    case ErrorCode::UnknownEdgeKind: return "UnknownEdgeKind";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::MissingBegin: return "MissingBegin";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::DegenerateTail: return "DegenerateTail";
    case ErrorCode::EmptyTail: return "EmptyTail";
    case ErrorCode::EmptyDistribution: return "EmptyDistribution";
    case ErrorCode::InsufficientPoints: return "InsufficientPoints";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::IncompletePartition: return "IncompletePartition";
    case ErrorCode::NodeSetMismatch: return "NodeSetMismatch";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace depnet
