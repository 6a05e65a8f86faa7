// Copyright 2026 The qchan Authors
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

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qchan::cli {

enum ExitCode : int {
  kSuccess = 0,
  kValidationFailure = 1,
  kUsageError = 2,
  kNumericalFailure = 3,
};

/// Runs one command line (subcommand first, program name excluded). The
/// JSON result goes to out and diagnostics to err.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qchan::cli
