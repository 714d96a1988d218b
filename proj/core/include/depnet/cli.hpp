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

#ifndef DEPNET_CLI_HPP
#define DEPNET_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace depnet {

/// Entry point behind the `depnet` binary. Exit codes: 0 success, 1
/// validation or I/O error, 2 usage error. Diagnostics go to `err`; report
/// data goes to files or `out`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload for tests: args exclude the program name and
/// streams default to std::cout / std::cerr.
int run_cli(const std::vector<std::string>& args);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace depnet

#endif  // DEPNET_CLI_HPP
