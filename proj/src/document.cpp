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

#include "qchan/document.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qchan::io {

namespace {

[[noreturn]] void parse_fail(const std::string& path, const std::string& message) {
  throw Error(ErrorCode::ParseError, path + ": " + message);
}

[[noreturn]] void invalid(const std::string& path, const std::string& message) {
  throw Error(ErrorCode::ValidationError, path + ": " + message);
}

// Runs a library constructor and reports its domain errors as validation
// failures at the given field path.
template <typename F>
auto validated(const std::string& path, F&& make) {
  try {
    return make();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError || e.code() == ErrorCode::ValidationError) throw;
    invalid(path, e.what());
  }
}

const Json& field(const Json& object, const char* key, const std::string& path) {
  const auto it = object.find(key);
  if (it == object.end()) parse_fail(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

std::string child(const std::string& path, const char* key) {
  return path.empty() ? std::string(key) : path + "." + key;
}

std::string element(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

double parse_number(const Json& j, const std::string& path) {
  if (!j.is_number()) parse_fail(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) parse_fail(path, "number is not finite");
  return x;
}

Index parse_count(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 1) {
    parse_fail(path, "expected a positive integer");
  }
  return static_cast<Index>(j.get<long long>());
}

Complex parse_complex(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) parse_fail(path, "expected a complex number [re, im]");
  return {parse_number(j[0], element(path, 0)), parse_number(j[1], element(path, 1))};
}

ComplexVector parse_vector(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) parse_fail(path, "expected a non-empty array of complex numbers");
  ComplexVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Index>(i)) = parse_complex(j[i], element(path, i));
  return v;
}

ComplexMatrix parse_matrix(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) parse_fail(path, "expected a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) parse_fail(element(path, 0), "expected a non-empty row");
  ComplexMatrix m(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string row_path = element(path, r);
    if (!j[r].is_array() || j[r].size() != cols) parse_fail(row_path, "rows have unequal length");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Index>(r), static_cast<Index>(c)) =
          parse_complex(j[r][c], element(row_path, c));
    }
  }
  return m;
}

void check_completeness(const KrausChannel& channel, const ParseOptions& options,
                        const std::string& path) {
  if (!options.check_completeness) return;
  const ValidationReport report = validate_kraus(channel, options.tol);
  if (!report.passed) {
    invalid(path, "completeness defect " + std::to_string(report.completeness_defect) +
                      " exceeds tolerance");
  }
}

KrausChannel parse_kraus(const Json& j, const ParseOptions& options) {
  const Index dim = parse_count(field(j, "dim", ""), "dim");
  const Json& ops = field(j, "operators", "");
  if (!ops.is_array() || ops.empty()) parse_fail("operators", "expected a non-empty array");
  std::vector<ComplexMatrix> matrices;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const std::string path = element("operators", i);
    ComplexMatrix m = parse_matrix(ops[i], path);
    if (m.rows() != dim || m.cols() != dim) invalid(path, "operator is not dim x dim");
    matrices.push_back(std::move(m));
  }
  KrausChannel channel = validated("operators", [&] { return KrausChannel(std::move(matrices)); });
  check_completeness(channel, options, "operators");
  return channel;
}

KrausChannel parse_standard(const Json& j, const ParseOptions& options) {
  const Json& name = field(j, "name", "");
  if (!name.is_string()) parse_fail("name", "expected a string");
  StandardChannelSpec spec;
  spec.name = name.get<std::string>();
  spec.dim = parse_count(field(j, "dim", ""), "dim");
  if (const auto it = j.find("params"); it != j.end()) {
    if (!it->is_object()) parse_fail("params", "expected an object");
    for (const auto& [key, value] : it->items()) {
      const std::string path = "params." + key;
      if (spec.name == "unitary" && key == "matrix") {
        spec.unitary = parse_matrix(value, path);
      } else {
        spec.params[key] = parse_number(value, path);
      }
    }
  }
  const auto build = [&]() -> KrausChannel {
    try {
      return make_standard_channel(spec);
    } catch (const Error& e) {
      invalid(e.code() == ErrorCode::UnknownChannelName ? "name" : "params", e.what());
    }
  };
  const KrausChannel channel = build();
  check_completeness(channel, options, "params");
  return channel;
}

PureState parse_pure_vector(const Json& j, const std::string& path, double tol) {
  const ComplexVector v = parse_vector(j, path);
  return validated(path, [&] { return PureState::from_vector(v, tol); });
}

PureEnsemble parse_ensemble(const Json& j, const ParseOptions& options) {
  const Json& probs = field(j, "probs", "");
  const Json& states = field(j, "states", "");
  if (!probs.is_array() || probs.empty()) parse_fail("probs", "expected a non-empty array");
  if (!states.is_array() || states.empty()) parse_fail("states", "expected a non-empty array");
  std::vector<double> p;
  for (std::size_t i = 0; i < probs.size(); ++i)
    p.push_back(parse_number(probs[i], element("probs", i)));
  std::vector<PureState> psi;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const std::string path = element("states", i);
    if (states[i].is_object()) {
      psi.push_back(
          parse_pure_vector(field(states[i], "vector", path), child(path, "vector"), options.tol));
    } else {
      psi.push_back(parse_pure_vector(states[i], path, options.tol));
    }
  }
  if (p.size() != psi.size()) invalid("probs", "needs one probability per state");
  return validated("probs",
                   [&] { return PureEnsemble(std::move(p), std::move(psi), options.tol); });
}

}  // namespace

Document parse_document(std::string_view text, const ParseOptions& options) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_fail("<document>", e.what());
  }
  if (!j.is_object()) parse_fail("<document>", "expected a JSON object");
  const Json& tag = field(j, "type", "");
  if (!tag.is_string()) parse_fail("type", "expected a string");
  const std::string type = tag.get<std::string>();

  if (type == "kraus") return {type, parse_kraus(j, options)};
  if (type == "standard") return {type, parse_standard(j, options)};
  if (type == "density") {
    const ComplexMatrix m = parse_matrix(field(j, "matrix", ""), "matrix");
    return {type, validated("matrix", [&] { return DensityMatrix::from_matrix(m, options.tol); })};
  }
  if (type == "pure")
    return {type, parse_pure_vector(field(j, "vector", ""), "vector", options.tol)};
  if (type == "ensemble") return {type, parse_ensemble(j, options)};
  if (type == "choi") {
    const Index dim = parse_count(field(j, "dim", ""), "dim");
    ComplexMatrix m = parse_matrix(field(j, "matrix", ""), "matrix");
    return {type, validated("matrix", [&] { return ChoiMatrix(dim, std::move(m), options.tol); })};
  }
  if (type == "dilation") {
    const Index dim_q = parse_count(field(j, "dim_q", ""), "dim_q");
    const Index dim_e = parse_count(field(j, "dim_e", ""), "dim_e");
    ComplexMatrix u = parse_matrix(field(j, "unitary", ""), "unitary");
    return {type, validated("unitary", [&] {
              return UnitaryDilation(dim_q, dim_e, std::move(u), options.tol);
            })};
  }
  parse_fail("type", "unknown document type \"" + type + "\"");
}

Document read_document(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_document(buffer.str(), options);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail());
  }
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json out = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const KrausChannel& channel) {
  Json ops = Json::array();
  for (const auto& a : channel.operators()) ops.push_back(matrix_to_json(a));
  return {{"type", "kraus"}, {"dim", channel.dim()}, {"operators", std::move(ops)}};
}

Json to_json(const ChoiMatrix& choi_matrix) {
  return {{"type", "choi"},
          {"dim", choi_matrix.dim()},
          {"matrix", matrix_to_json(choi_matrix.matrix())}};
}

Json to_json(const UnitaryDilation& dilation) {
  return {{"type", "dilation"},
          {"dim_q", dilation.dim_q()},
          {"dim_e", dilation.dim_e()},
          {"unitary", matrix_to_json(dilation.unitary())}};
}

Json to_json(const DensityMatrix& rho) {
  return {{"type", "density"}, {"matrix", matrix_to_json(rho.matrix())}};
}

Json to_json(const PureState& psi) {
  return {{"type", "pure"}, {"vector", vector_to_json(psi.vector())}};
}

Json to_json(const PureEnsemble& ensemble) {
  Json states = Json::array();
  for (const auto& s : ensemble.states()) states.push_back(vector_to_json(s.vector()));
  return {{"type", "ensemble"}, {"probs", ensemble.probs()}, {"states", std::move(states)}};
}

namespace {

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

// Arrays nested at most two deep (complex pairs, matrix rows) stay on one line.
bool is_flat(const Json& j, int depth = 2) {
  if (!j.is_structured()) return true;
  if (depth == 0 || j.is_object()) return false;
  for (const auto& e : j)
    if (!is_flat(e, depth - 1)) return false;
  return true;
}

void write(const Json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(key).dump() + ": ";
        write(value, indent + 2, out);
      }
      out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      if (is_flat(j)) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write(j[i], indent, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write(j[i], indent + 2, out);
      }
      out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string emit_report(const Json& value) {
  std::string out;
  write(value, 0, out);
  out += "\n";
  return out;
}

}  // namespace qchan::io
