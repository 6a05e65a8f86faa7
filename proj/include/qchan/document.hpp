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

#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"
#include "qchan/channels.hpp"

namespace qchan::io {

using Json = nlohmann::json;

using DocumentValue =
    std::variant<KrausChannel, ChoiMatrix, UnitaryDilation, DensityMatrix, PureState, PureEnsemble>;

/// A parsed interchange document: its "type" tag and the library value.
struct Document {
  std::string type;
  DocumentValue value;
};

struct ParseOptions {
  double tol = kDefaultTol;
  /// When false, Kraus completeness is not enforced (the validate command
  /// reports it instead).
  bool check_completeness = true;
};

/// Parses one JSON document. Syntax and schema problems raise ParseError;
/// semantic problems (trace, positivity, completeness, ranges) raise
/// ValidationError. Both messages name the offending field path.
Document parse_document(std::string_view text, const ParseOptions& options = {});
Document read_document(const std::string& path, const ParseOptions& options = {});

/// Complex scalars are [re, im]; matrices are arrays of rows.
Json complex_to_json(Complex z);
Json matrix_to_json(const ComplexMatrix& m);
Json vector_to_json(const ComplexVector& v);

Json to_json(const KrausChannel& channel);
Json to_json(const ChoiMatrix& choi_matrix);
Json to_json(const UnitaryDilation& dilation);
Json to_json(const DensityMatrix& rho);
Json to_json(const PureState& psi);
Json to_json(const PureEnsemble& ensemble);

/// Canonical text: keys in lexicographic order, two-space indentation,
/// doubles with 17 significant digits, trailing newline.
std::string emit_report(const Json& value);

}  // namespace qchan::io
