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

#ifndef DEPNET_SRC_PARALLEL_HPP
#define DEPNET_SRC_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace depnet::detail {

/// Worker-thread cap: min(DEPNET_THREADS, hardware concurrency), at least 1.
std::size_t thread_budget();

/// Runs fn(thread_index) on `threads` workers and joins them. Inline when
/// threads <= 1. Callers own determinism: work must be assigned by index.
void run_on_threads(std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace depnet::detail

#endif  // DEPNET_SRC_PARALLEL_HPP
