// Copyright 2026 The tcsfid Authors
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

#ifndef TCSFID_CLI_HPP
#define TCSFID_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace tcsfid::cli {

enum ExitCode : int {
    kSuccess = 0,
    kNumericalFailure = 1,
    kUsageError = 2,
};

/// Runs the command line `args`, program name excluded. Results go
/// to `out`, warnings and usage errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tcsfid::cli

#endif  // TCSFID_CLI_HPP
