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

#include <stdexcept>
#include <string>
#include <string_view>

namespace qchan {

enum class ErrorCode {
  NotHermitian,
  NoConvergence,
  NotPSD,
  DimensionMismatch,
  NotIsometry,
  NotUnitary,
  NotUnitaryMatrix,
  ZeroWeight,
  NotSamePartialState,
  InvalidState,
  InvalidChannel,
  TracePreservationViolated,
  UnknownChannelName,
  ParamOutOfRange,
  NotADistribution,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorCode code);

/// Exception type for every failure raised by the library. The code is
/// stable and is what the command line front end maps to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        detail_(what) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace qchan
