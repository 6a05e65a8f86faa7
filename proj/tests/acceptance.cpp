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

// Acceptance suite. Prints one line per criterion and exits non-zero if any
// criterion fails.

#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qchan/commands.hpp"
#include "qchan/metrics.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace qchan;
using namespace qchan::testing;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && passed) {
      passed = false;
      detail = what;
    }
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

const DensityMatrix kHalf = DensityMatrix::maximally_mixed(2);

Outcome dephasing_benchmark() {
  Outcome o;
  const double io = input_output_fidelity(kHalf, dephasing(2));
  const double fe = entanglement_fidelity(kHalf, dephasing(2));
  o.require(std::abs(io - 1.0) <= 1e-9, "input_output_fidelity = " + fmt(io));
  o.require(std::abs(fe - 0.5) <= 1e-9, "entanglement_fidelity = " + fmt(fe));
  return o;
}

Outcome fano_saturation() {
  Outcome o;
  const FanoReport r = quantum_fano(kHalf, depolarizing(1.0));
  o.require(std::abs(r.entanglement_fidelity - 0.25) <= 1e-9,
            "F_e = " + fmt(r.entanglement_fidelity));
  o.require(std::abs(r.entropy_exchange - 2.0) <= 1e-9, "S_e = " + fmt(r.entropy_exchange));
  o.require(std::abs(r.strong_bound - 2.0) <= 1e-9, "strong bound = " + fmt(r.strong_bound));
  return o;
}

Outcome quantum_fano_sweep() {
  Outcome o;
  Rng rng(1001);
  double worst = 1.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Index d = 2 + trial % 3;
    const FanoReport r = quantum_fano(random_density(d, rng, uniform_index(1, d, rng)),
                                      random_channel(d, uniform_index(1, d * d, rng), rng));
    worst = std::min(worst, r.strong_bound - r.entropy_exchange);
  }
  o.require(worst >= -1e-9, "minimum slack " + fmt(worst));
  if (o.passed) o.detail = "minimum slack " + fmt(worst);
  return o;
}

Outcome fidelity_chain() {
  Outcome o;
  Rng rng(1002);
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = uniform_index(1, 4, rng);
    const KrausChannel c = random_channel(d, uniform_index(1, d * d, rng), rng);
    const PureEnsemble e = random_ensemble(d, uniform_index(1, 4, rng), rng);
    const DensityMatrix rho = density_from_ensemble(e);
    const double fe = entanglement_fidelity(rho, c);
    o.require(fe <= average_ensemble_fidelity(e, c) + 1e-9, "F_e > average fidelity");
    o.require(fe <= input_output_fidelity(rho, c) + 1e-9, "F_e > input-output fidelity");
    const DensityMatrix pure = e.states()[0].density();
    const double gap = std::abs(entanglement_fidelity(pure, c) - input_output_fidelity(pure, c));
    o.require(gap <= 1e-9, "pure-input gap " + fmt(gap));
  }
  return o;
}

Outcome dual_route() {
  Outcome o;
  Rng rng(1003);
  double worst_f = 0.0, worst_s = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = uniform_index(1, 4, rng);
    const KrausChannel c = random_channel(d, uniform_index(1, d * d, rng), rng);
    const DensityMatrix rho = random_density(d, rng, uniform_index(1, d, rng));
    worst_f = std::max(
        worst_f, std::abs(entanglement_fidelity(rho, c) - entanglement_fidelity_purified(rho, c)));
    worst_s =
        std::max(worst_s, std::abs(entropy_exchange(rho, c) - entropy_exchange_purified(rho, c)));
  }
  o.require(worst_f <= 1e-9, "fidelity gap " + fmt(worst_f));
  o.require(worst_s <= 1e-9, "entropy gap " + fmt(worst_s));
  if (o.passed) o.detail = "max gaps " + fmt(worst_f) + ", " + fmt(worst_s);
  return o;
}

Outcome representation_invariance() {
  Outcome o;
  Rng rng(1004);
  for (int trial = 0; trial < 50; ++trial) {
    const Index d = uniform_index(1, 4, rng);
    const KrausChannel c = random_channel(d, uniform_index(1, d * d, rng), rng);
    const DensityMatrix rho = random_density(d, rng);
    const double fe = entanglement_fidelity(rho, c);
    const double se = entropy_exchange(rho, c);
    const ComplexMatrix reference = choi_direct(c.operators());

    const KrausChannel mixed =
        mix_kraus(c, random_unitary(Index(c.size()) + uniform_index(0, 2, rng), rng));
    o.require(std::abs(entanglement_fidelity(rho, mixed) - fe) <= 1e-9, "F_e changed by mixing");
    o.require(std::abs(entropy_exchange(rho, mixed) - se) <= 1e-9, "S_e changed by mixing");
    o.require(max_abs(choi_direct(mixed.operators()) - reference) <= 1e-9,
              "Choi changed by mixing");

    const KrausChannel via_dilation = kraus_from_dilation(dilation_from_kraus(c));
    const KrausChannel via_choi = kraus_from_choi(choi(c));
    o.require(max_abs(choi_direct(via_dilation.operators()) - reference) <= 1e-8,
              "dilation round trip");
    o.require(max_abs(choi_direct(via_choi.operators()) - reference) <= 1e-8, "Choi round trip");
    for (const KrausChannel* k : {&via_dilation, &via_choi}) {
      o.require(std::abs(entanglement_fidelity(rho, *k) - fe) <= 1e-8, "F_e changed by round trip");
      o.require(std::abs(entropy_exchange(rho, *k) - se) <= 1e-8, "S_e changed by round trip");
    }
  }
  return o;
}

Outcome entropy_bounds() {
  Outcome o;
  Rng rng(1005);
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = uniform_index(1, 4, rng);
    const EntropyBoundsReport r =
        entropy_bounds_report(random_density(d, rng, uniform_index(1, d, rng)),
                              random_channel(d, uniform_index(1, d * d, rng), rng));
    o.require(r.entropy_exchange >= std::abs(r.entropy_change) - 1e-9, "lower bound violated");
    o.require(r.entropy_exchange <= r.input_entropy + r.output_entropy + 1e-9,
              "upper bound violated");
  }
  const EntropyBoundsReport damped = entropy_bounds_report(kHalf, amplitude_damping(1.0));
  o.require(std::abs(damped.entropy_change + 1.0) <= 1e-9, "ΔS = " + fmt(damped.entropy_change));
  o.require(std::abs(damped.entropy_exchange - 1.0) <= 1e-9,
            "S_e = " + fmt(damped.entropy_exchange));
  return o;
}

PureEnsemble two_states(const ComplexVector& a, const ComplexVector& b) {
  return PureEnsemble({0.5, 0.5}, {PureState::from_vector(a), PureState::from_vector(b)});
}

Outcome eavesdropping() {
  Outcome o;
  const double r = 1 / std::sqrt(2.0);
  const double basis = eavesdrop_bound(two_states(vec({1, 0}), vec({0, 1})), dephasing(2)).bound;
  const double conj = eavesdrop_bound(two_states(vec({r, r}), vec({r, -r})), dephasing(2)).bound;
  o.require(std::abs(basis - 1.0) <= 1e-9, "computational bound = " + fmt(basis));
  o.require(std::abs(conj) <= 1e-9, "conjugate bound = " + fmt(conj));
  Rng rng(1006);
  for (int trial = 0; trial < 50; ++trial) {
    const Index d = uniform_index(1, 4, rng);
    const Index m = uniform_index(1, d * d, rng);
    const KrausChannel c = random_channel(d, m, rng);
    const PureEnsemble e = random_ensemble(d, uniform_index(1, 4, rng), rng);
    const EavesdropReport report = eavesdrop_bound(e, c);
    const double info = mutual_information(simulate_eve_measurement(e, c, random_unitary(m, rng)));
    o.require(info <= report.holevo_chi + 1e-9, "I(X:Y) exceeds holevo_chi");
    o.require(report.holevo_chi <= report.entropy_exchange + 1e-9, "holevo_chi exceeds S_e");
  }
  return o;
}

Outcome entropy_inequalities() {
  Outcome o;
  Rng rng(1007);
  for (int trial = 0; trial < 100; ++trial) {
    const Index da = uniform_index(1, 4, rng);
    const Index db = uniform_index(1, 4, rng);
    const DensityMatrix ab = random_density(da * db, rng, uniform_index(1, da * db, rng));
    const double s_ab = von_neumann_entropy(ab);
    const double s_a = von_neumann_entropy(partial_trace(ab.matrix(), da, db, Keep::first));
    const double s_b = von_neumann_entropy(partial_trace(ab.matrix(), da, db, Keep::second));
    o.require(s_ab <= s_a + s_b + 1e-9, "subadditivity violated");
    o.require(s_ab >= std::abs(s_a - s_b) - 1e-9, "triangle inequality violated");
    const Index d = uniform_index(1, 4, rng);
    const DensityMatrix rho = random_density(d, rng);
    const double h = shannon_entropy(measurement_probabilities(rho, random_unitary(d, rng)), 1e-8);
    o.require(h >= von_neumann_entropy(rho) - 1e-9, "measurement entropy below S(ρ)");
  }
  return o;
}

Outcome processed_fidelity() {
  Outcome o;
  Rng rng(1008);
  for (int trial = 0; trial < 20; ++trial) {
    const Index d = uniform_index(2, 4, rng);
    const double f = processed_entanglement_fidelity(random_density(d, rng),
                                                     unitary_channel(random_unitary(d, rng)))
                         .value;
    o.require(std::abs(f - 1.0) <= 1e-9, "unitary channel gives " + fmt(f));
  }
  for (int trial = 0; trial < 20; ++trial) {
    const Index d = uniform_index(1, 4, rng);
    const KrausChannel c = random_channel(d, uniform_index(1, d * d, rng), rng);
    const DensityMatrix rho = random_density(d, rng);
    o.require(
        processed_entanglement_fidelity(rho, c).value >= entanglement_fidelity(rho, c) - 1e-12,
        "processed fidelity below F_e");
  }
  struct Fixture {
    DensityMatrix rho;
    KrausChannel channel;
  };
  std::vector<Fixture> fixtures = {
      {kHalf, dephasing(2)},
      {DensityMatrix::from_matrix(diag({0.75, 0.25})), amplitude_damping(0.25)},
      {random_density(2, rng), depolarizing(0.5)},
      {random_density(2, rng), random_channel(2, 3, rng)},
  };
  double worst = 0.0;
  for (const Fixture& f : fixtures) {
    const double heuristic = processed_entanglement_fidelity(f.rho, f.channel).value;
    const double grid = grid_max_u2(
        [&](const ComplexMatrix& u) { return processed_objective(f.rho, f.channel, u); });
    worst = std::max(worst, std::abs(heuristic - grid));
  }
  o.require(worst <= 2e-3, "grid gap " + fmt(worst));
  if (o.passed) o.detail = "grid gap " + fmt(worst);
  return o;
}

std::string fixture(const std::string& name) { return std::string(QCHAN_FIXTURE_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Outcome cli_end_to_end() {
  Outcome o;
  struct Golden {
    std::vector<std::string> args;
    std::string file;
  };
  const std::vector<Golden> goldens = {
      {{"fe", "--channel", fixture("identity.json"), "--state", fixture("mixed.json")},
       "fe_identity_mixed.json"},
      {{"se", "--channel", fixture("dephasing2.json"), "--state", fixture("maxmixed2.json")},
       "se_dephasing2_maxmixed2.json"},
      {{"fano", "--channel", fixture("depolarizing_p1.json"), "--state", fixture("maxmixed2.json")},
       "fano_depolarizing_p1_maxmixed2.json"},
  };
  for (const Golden& g : goldens) {
    std::ostringstream out, err;
    const int code = cli::run_command(g.args, out, err);
    o.require(code == 0, g.file + " exit " + std::to_string(code));
    o.require(out.str() == slurp(fixture("golden/" + g.file)), g.file + " differs from golden");
  }
  struct Expect {
    std::vector<std::string> args;
    int code;
  };
  const std::vector<Expect> corpus = {
      {{"validate", "--channel", fixture("depolarizing_p05.json"), "--state", fixture("ket0.json")},
       0},
      {{"eavesdrop", "--channel", fixture("dephasing2.json"), "--ensemble",
        fixture("computational.json")},
       0},
      {{"fe", "--channel", fixture("dephasing2.json"), "--state", fixture("trace09.json")}, 1},
      {{"validate", "--channel", fixture("incomplete.json")}, 1},
      {{"fe", "--channel", fixture("dephasing2.json"), "--state", fixture("malformed.json")}, 2},
      {{"fe", "--channel", fixture("unknown_type.json"), "--state", fixture("mixed.json")}, 2},
      {{"fe", "--channel", fixture("dephasing2.json")}, 2},
  };
  for (const Expect& e : corpus) {
    std::ostringstream out, err;
    const int code = cli::run_command(e.args, out, err);
    o.require(code == e.code, e.args[0] + " " + e.args[2] + " exit " + std::to_string(code) +
                                  ", expected " + std::to_string(e.code));
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"dephasing benchmark", dephasing_benchmark},
      {"Fano saturation", fano_saturation},
      {"quantum Fano inequality", quantum_fano_sweep},
      {"fidelity chain", fidelity_chain},
      {"dual-route agreement", dual_route},
      {"representation invariance", representation_invariance},
      {"entropy bounds", entropy_bounds},
      {"eavesdropping bound", eavesdropping},
      {"entropy inequalities", entropy_inequalities},
      {"processed fidelity", processed_fidelity},
      {"CLI end-to-end", cli_end_to_end},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.passed) ++failures;
    std::printf("[%s] %zu %s%s%s\n", outcome.passed ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), outcome.detail.empty() ? "" : ": ",
                outcome.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
