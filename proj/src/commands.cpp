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

#include "qchan/commands.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>

#include "CLI11.hpp"
#include "qchan/document.hpp"
#include "qchan/metrics.hpp"

namespace qchan::cli {

namespace {

using io::Json;

struct Options {
  std::string channel;
  std::string state;
  std::string ensemble;
  std::string to;
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  unsigned restarts = 16;
};

[[noreturn]] void usage(const std::string& message) { throw Error(ErrorCode::ParseError, message); }

const std::string& require_flag(const std::string& value, const char* flag) {
  if (value.empty()) usage(std::string("missing required option ") + flag);
  return value;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
      return kUsageError;
    case ErrorCode::NoConvergence:
      return kNumericalFailure;
    default:
      return kValidationFailure;
  }
}

KrausChannel as_channel(const io::Document& doc, const std::string& path) {
  try {
    if (const auto* c = std::get_if<KrausChannel>(&doc.value)) return *c;
    if (const auto* d = std::get_if<ChoiMatrix>(&doc.value)) return kraus_from_choi(*d);
    if (const auto* u = std::get_if<UnitaryDilation>(&doc.value)) return kraus_from_dilation(*u);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoConvergence) throw;
    throw Error(ErrorCode::ValidationError, path + ": " + e.what());
  }
  usage(path + ": document of type \"" + doc.type + "\" is not a channel");
}

KrausChannel load_channel(const Options& o) {
  const std::string& path = require_flag(o.channel, "--channel");
  const KrausChannel channel = as_channel(io::read_document(path, {o.tol, true}), path);
  if (!validate_kraus(channel, o.tol).passed) {
    throw Error(ErrorCode::ValidationError, path + ": channel is not trace preserving");
  }
  return channel;
}

DensityMatrix load_state(const Options& o) {
  const std::string& path = require_flag(o.state, "--state");
  const io::Document doc = io::read_document(path, {o.tol, true});
  if (const auto* rho = std::get_if<DensityMatrix>(&doc.value)) return *rho;
  if (const auto* psi = std::get_if<PureState>(&doc.value)) return psi->density();
  if (const auto* e = std::get_if<PureEnsemble>(&doc.value)) return density_from_ensemble(*e);
  usage(path + ": document of type \"" + doc.type + "\" is not a state");
}

PureEnsemble load_ensemble(const Options& o) {
  const std::string& path = require_flag(o.ensemble, "--ensemble");
  const io::Document doc = io::read_document(path, {o.tol, true});
  if (const auto* e = std::get_if<PureEnsemble>(&doc.value)) return *e;
  if (const auto* psi = std::get_if<PureState>(&doc.value)) return PureEnsemble({1.0}, {*psi});
  usage(path + ": document of type \"" + doc.type + "\" is not an ensemble");
}

void require_same_dim(const KrausChannel& channel, Index dim) {
  if (channel.dim() != dim) {
    throw Error(ErrorCode::ValidationError, "channel dimension " + std::to_string(channel.dim()) +
                                                " does not match state dimension " +
                                                std::to_string(dim));
  }
}

Json fe_fields(const DensityMatrix& rho, const KrausChannel& c, double tol) {
  return {{"entanglement_fidelity", entanglement_fidelity(rho, c, tol)}};
}

Json se_fields(const DensityMatrix& rho, const KrausChannel& c, double tol) {
  const WMatrix w = w_matrix(rho, c, tol);
  return {{"entropy_exchange_bits", von_neumann_entropy(w.matrix)},
          {"w_matrix", io::matrix_to_json(w.matrix)}};
}

Json fano_fields(const DensityMatrix& rho, const KrausChannel& c, double tol) {
  const FanoReport r = quantum_fano(rho, c, tol);
  return {{"F_e", r.entanglement_fidelity},
          {"S_e", r.entropy_exchange},
          {"d", r.dim},
          {"strong_bound", r.strong_bound},
          {"weak_bound", r.weak_bound},
          {"strong_holds", r.strong_holds},
          {"weak_holds", r.weak_holds}};
}

// Returns the report and the exit status; only validate can fail softly.
std::pair<Json, int> validate_command(const Options& o) {
  if (o.channel.empty() && o.state.empty() && o.ensemble.empty()) {
    usage("validate needs --channel, --state or --ensemble");
  }
  Json report = Json::object();
  bool all_passed = true;
  const auto check = [&](const char* role, const std::string& path, bool is_channel) {
    if (path.empty()) return;
    Json entry;
    try {
      const io::Document doc = io::read_document(path, {o.tol, !is_channel});
      entry["type"] = doc.type;
      if (is_channel) {
        const ValidationReport v = validate_kraus(as_channel(doc, path), o.tol);
        entry["completeness_defect"] = v.completeness_defect;
        entry["passed"] = v.passed;
      } else {
        entry["passed"] = true;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ValidationError) throw;
      entry["passed"] = false;
      entry["message"] = e.what();
    }
    all_passed = all_passed && entry["passed"].get<bool>();
    report[role] = std::move(entry);
  };
  check("channel", o.channel, true);
  check("state", o.state, false);
  check("ensemble", o.ensemble, false);
  report["valid"] = all_passed;
  return {report, all_passed ? kSuccess : kValidationFailure};
}

Json convert_command(const Options& o) {
  const KrausChannel channel = load_channel(o);
  const std::string& to = require_flag(o.to, "--to");
  if (to == "choi") return io::to_json(choi(channel, o.tol));
  if (to == "dilation") return io::to_json(dilation_from_kraus(channel, o.tol));
  if (to == "kraus") return io::to_json(channel);
  usage("--to must be one of choi, dilation, kraus");
}

Json eavesdrop_command(const Options& o) {
  const KrausChannel channel = load_channel(o);
  const PureEnsemble ensemble = load_ensemble(o);
  require_same_dim(channel, ensemble.dim());
  const EavesdropReport r = eavesdrop_bound(ensemble, channel, o.tol);
  return {{"per_preparation_entropy_exchange", r.per_preparation},
          {"entropy_exchange_bits", r.entropy_exchange},
          {"holevo_chi", r.holevo_chi},
          {"bound", r.bound}};
}

Json report_command(const Options& o) {
  const KrausChannel channel = load_channel(o);
  const DensityMatrix rho = load_state(o);
  require_same_dim(channel, rho.dim());
  Json out = fe_fields(rho, channel, o.tol);
  out.update(se_fields(rho, channel, o.tol));
  out.update(fano_fields(rho, channel, o.tol));
  out["input_output_fidelity"] = input_output_fidelity(rho, channel, o.tol);
  out["processed_entanglement_fidelity"] =
      processed_entanglement_fidelity(rho, channel, o.restarts, o.seed, o.tol).value;
  const EntropyBoundsReport b = entropy_bounds_report(rho, channel, o.tol);
  out["entropy_bounds"] = {
      {"input_entropy", b.input_entropy},   {"output_entropy", b.output_entropy},
      {"entropy_change", b.entropy_change}, {"entropy_exchange_bits", b.entropy_exchange},
      {"lower_holds", b.lower_holds},       {"upper_holds", b.upper_holds}};
  return out;
}

std::pair<Json, int> dispatch(const std::string& command, const Options& o) {
  if (command == "validate") return validate_command(o);
  if (command == "convert") return {convert_command(o), kSuccess};
  if (command == "eavesdrop") return {eavesdrop_command(o), kSuccess};
  if (command == "report") return {report_command(o), kSuccess};

  const KrausChannel channel = load_channel(o);
  const DensityMatrix rho = load_state(o);
  require_same_dim(channel, rho.dim());
  if (command == "apply") return {io::to_json(apply(channel, rho, o.tol)), kSuccess};
  if (command == "fe") return {fe_fields(rho, channel, o.tol), kSuccess};
  if (command == "se") return {se_fields(rho, channel, o.tol), kSuccess};
  if (command == "fano") return {fano_fields(rho, channel, o.tol), kSuccess};
  if (command == "canonical") {
    return {io::to_json(canonical_kraus(channel, rho, o.tol)), kSuccess};
  }
  usage("unknown command " + command);
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analyze quantum channels: fidelities, entropy exchange and Fano bounds"};
  app.name("qchan");
  app.require_subcommand(1);

  Options o;
  struct Spec {
    const char* name;
    const char* help;
    bool channel, state, ensemble, to, ascent;
  };
  const Spec specs[] = {
      {"validate", "Check documents against their invariants", true, true, true, false, false},
      {"apply", "Apply a channel to a state", true, true, false, false, false},
      {"fe", "Entanglement fidelity", true, true, false, false, false},
      {"se", "Entropy exchange and W matrix", true, true, false, false, false},
      {"fano", "Quantum Fano inequality", true, true, false, false, false},
      {"convert", "Convert a channel to another representation", true, false, false, true, false},
      {"canonical", "Diagonal operator-sum representation for a state", true, true, false, false,
       false},
      {"eavesdrop", "Information bound for an environment eavesdropper", true, false, true, false,
       false},
      {"report", "All channel quantities for one state", true, true, false, false, true},
  };
  for (const Spec& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    if (s.channel) sub->add_option("--channel", o.channel, "Channel document (JSON)");
    if (s.state) sub->add_option("--state", o.state, "State document (JSON)");
    if (s.ensemble) sub->add_option("--ensemble", o.ensemble, "Ensemble document (JSON)");
    if (s.to) sub->add_option("--to", o.to, "Target representation: choi, dilation or kraus");
    sub->add_option("--tol", o.tol, "Validation tolerance")->check(CLI::PositiveNumber);
    if (s.ascent) {
      sub->add_option("--seed", o.seed, "Seed for randomized restarts");
      sub->add_option("--restarts", o.restarts, "Restarts for the processed fidelity ascent");
    }
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "qchan: " << e.what() << "\n";
    return kUsageError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const auto [report, status] = dispatch(command, o);
    out << io::emit_report(report);
    return status;
  } catch (const Error& e) {
    err << "qchan " << command << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "qchan " << command << ": " << e.what() << "\n";
    return kNumericalFailure;
  }
}

}  // namespace qchan::cli
