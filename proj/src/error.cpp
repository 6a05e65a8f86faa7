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

#include "qchan/error.hpp"

namespace qchan {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian:
      return "NotHermitian";
    case ErrorCode::NoConvergence:
      return "NoConvergence";
    case ErrorCode::NotPSD:
      return "NotPSD";
    case ErrorCode::DimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::NotIsometry:
      return "NotIsometry";
    case ErrorCode::NotUnitary:
      return "NotUnitary";
    case ErrorCode::NotUnitaryMatrix:
      return "NotUnitaryMatrix";
    case ErrorCode::ZeroWeight:
      return "ZeroWeight";
    case ErrorCode::NotSamePartialState:
      return "NotSamePartialState";
    case ErrorCode::InvalidState:
      return "InvalidState";
    case ErrorCode::InvalidChannel:
      return "InvalidChannel";
    case ErrorCode::TracePreservationViolated:
      return "TracePreservationViolated";
    case ErrorCode::UnknownChannelName:
      return "UnknownChannelName";
    case ErrorCode::ParamOutOfRange:
      return "ParamOutOfRange";
    case ErrorCode::NotADistribution:
      return "NotADistribution";
    case ErrorCode::ParseError:
      return "ParseError";
    case ErrorCode::ValidationError:
      return "ValidationError";
  }
  return "Unknown";
}

}  // namespace qchan
