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

#include <cstdint>
#include <vector>

#include "qchan/channels.hpp"

namespace qchan {

/// Slack used by every inequality verdict in the reports below.
inline constexpr double kBoundSlack = 1e-9;

/// W_μν = Tr A_μ ρ A_ν†: a density operator on the Kraus index space.
struct WMatrix {
  ComplexMatrix matrix;
  /// P_μ = W_μμ.
  std::vector<double> diagonal() const;
};

/// Joint table p(x_j, y_k); rows index X, columns index Y.
class JointDistribution {
 public:
  explicit JointDistribution(Eigen::MatrixXd table, double tol = kDefaultTol);

  const Eigen::MatrixXd& table() const { return table_; }
  std::vector<double> marginal_x() const;
  std::vector<double> marginal_y() const;

 private:
  Eigen::MatrixXd table_;
};

struct FanoReport {
  double entanglement_fidelity = 0.0;
  double entropy_exchange = 0.0;
  Index dim = 0;
  double strong_bound = 0.0;  // h(F_e) + (1 − F_e) log2(d² − 1)
  double weak_bound = 0.0;    // 1 + 2 (1 − F_e) log2 d
  bool strong_holds = false;
  bool weak_holds = false;
};

struct ClassicalFanoReport {
  double strong_bound = 0.0;  // h(P_E) + P_E log2(N − 1)
  double weak_bound = 0.0;    // 1 + P_E log2 N
  bool strong_holds = false;
  bool weak_holds = false;
};

struct EntropyBoundsReport {
  double input_entropy = 0.0;
  double output_entropy = 0.0;
  double entropy_change = 0.0;  // S(ρ′) − S(ρ)
  double entropy_exchange = 0.0;
  bool lower_holds = false;  // S_e ≥ |ΔS|
  bool upper_holds = false;  // S_e ≤ S(ρ) + S(ρ′)
};

struct EavesdropReport {
  std::vector<double> per_preparation;  // S_e,k
  double entropy_exchange = 0.0;        // S_e of the average input
  double holevo_chi = 0.0;              // S(ρ̄^E′) − Σ p_k S(ρ^E′_k)
  double bound = 0.0;                   // S_e − Σ p_k S_e,k
};

struct AscentTrace {
  std::vector<double> objective;  // f after each accepted step, starting value first
  ComplexMatrix unitary;
};

struct ProcessedFidelity {
  double value = 0.0;
  ComplexMatrix unitary;
};

/// (Tr √(√ρ1 ρ2 √ρ1))².
double uhlmann_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Σ_μ |Tr ρ A_μ|².
double entanglement_fidelity(const DensityMatrix& rho, const KrausChannel& channel,
                             double tol = kDefaultTol);

/// ⟨Ψ|(1 ⊗ $)(|Ψ⟩⟨Ψ|)|Ψ⟩ for the canonical purification Ψ of ρ.
double entanglement_fidelity_purified(const DensityMatrix& rho, const KrausChannel& channel,
                                      double tol = kDefaultTol);

double input_output_fidelity(const DensityMatrix& rho, const KrausChannel& channel,
                             double tol = kDefaultTol);

double average_ensemble_fidelity(const PureEnsemble& ensemble, const KrausChannel& channel,
                                 double tol = kDefaultTol);

WMatrix w_matrix(const DensityMatrix& rho, const KrausChannel& channel, double tol = kDefaultTol);

/// S(W) in bits.
double entropy_exchange(const DensityMatrix& rho, const KrausChannel& channel,
                        double tol = kDefaultTol);

/// S((1 ⊗ $)(|Ψ⟩⟨Ψ|)) for the canonical purification Ψ of ρ.
double entropy_exchange_purified(const DensityMatrix& rho, const KrausChannel& channel,
                                 double tol = kDefaultTol);

EntropyBoundsReport entropy_bounds_report(const DensityMatrix& rho, const KrausChannel& channel,
                                          double tol = kDefaultTol);

/// f(U) = Σ_μ |Tr ρ U A_μ|².
double processed_objective(const DensityMatrix& rho, const KrausChannel& channel,
                           const ComplexMatrix& u);

/// Fixed-point ascent of f from a starting unitary. Each step replaces U by
/// the adjoint polar factor of Σ_μ c_μ* A_μ ρ with c_μ = Tr ρ U A_μ; it stops
/// when the gain drops below 1e-12, after max_steps, or on a decrease.
AscentTrace ascend_processed_fidelity(const DensityMatrix& rho, const KrausChannel& channel,
                                      const ComplexMatrix& start, int max_steps = 500);

/// max_U f(U), by ascent from the identity plus restarts − 1 Haar-random
/// starts drawn from the seed.
ProcessedFidelity processed_entanglement_fidelity(const DensityMatrix& rho,
                                                  const KrausChannel& channel,
                                                  unsigned restarts = 16, std::uint64_t seed = 0,
                                                  double tol = kDefaultTol);

/// Binary entropy h(x) in bits.
double binary_entropy(double x);

/// Shannon entropy in bits; throws NotADistribution.
double shannon_entropy(const std::vector<double>& p, double tol = kDefaultTol);

double mutual_information(const JointDistribution& joint);

/// H(X|Y) = H(X, Y) − H(Y).
double conditional_entropy(const JointDistribution& joint);

ClassicalFanoReport classical_fano(double error_probability, int alphabet_size,
                                   double conditional_entropy_x_given_y);

FanoReport quantum_fano(const DensityMatrix& rho, const KrausChannel& channel,
                        double tol = kDefaultTol);

/// Environment state ρ^E′ = Tr_Q U(ρ ⊗ |0⟩⟨0|)U† of a dilation.
ComplexMatrix environment_state(const UnitaryDilation& dilation, const DensityMatrix& rho);

EavesdropReport eavesdrop_bound(const PureEnsemble& ensemble, const KrausChannel& channel,
                                double tol = kDefaultTol);

/// p(k, j) = p_k ⟨ε_j|ρ^E′_k|ε_j⟩ for an environment measurement in the
/// columns of basis_e (dimension = number of Kraus operators).
JointDistribution simulate_eve_measurement(const PureEnsemble& ensemble,
                                           const KrausChannel& channel,
                                           const ComplexMatrix& basis_e, double tol = kDefaultTol);

}  // namespace qchan
