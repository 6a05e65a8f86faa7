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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qchan/states.hpp"

namespace qchan {

/// Operator-sum representation ρ ↦ Σ_μ A_μ ρ A_μ†.
///
/// Construction only checks structure (square operators of one dimension,
/// at least one operator, finite entries). Completeness is reported by
/// validate_kraus and enforced by the operations that need a valid channel.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<ComplexMatrix> operators);

  Index dim() const { return operators_.front().rows(); }
  std::size_t size() const { return operators_.size(); }
  const std::vector<ComplexMatrix>& operators() const { return operators_; }

  /// ‖Σ A_μ†A_μ − 1‖_max.
  double completeness_defect() const;

 private:
  std::vector<ComplexMatrix> operators_;
};

/// Unitary on Q ⊗ E (Q-major, row index q * dim_e + e) with the environment
/// prepared in its first basis state.
class UnitaryDilation {
 public:
  /// Throws NotUnitary when ‖U†U − 1‖_max > tol.
  UnitaryDilation(Index dim_q, Index dim_e, ComplexMatrix unitary, double tol = kDefaultTol);

  Index dim_q() const { return dim_q_; }
  Index dim_e() const { return dim_e_; }
  const ComplexMatrix& unitary() const { return unitary_; }

 private:
  Index dim_q_;
  Index dim_e_;
  ComplexMatrix unitary_;
};

/// D = Σ_μ (1 ⊗ A_μ)|Ψ̃⟩⟨Ψ̃|(1 ⊗ A_μ)† with the unnormalized |Ψ̃⟩ = Σ_k |k⟩|k⟩,
/// R-major. Trace equals the dimension.
class ChoiMatrix {
 public:
  /// Checks shape, hermiticity, positivity and trace within tol. Throws
  /// NotPSD for a negative eigenvalue and InvalidChannel otherwise.
  ChoiMatrix(Index dim, ComplexMatrix matrix, double tol = kDefaultTol);

  Index dim() const { return dim_; }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  Index dim_;
  ComplexMatrix matrix_;
};

struct ValidationReport {
  double completeness_defect = 0.0;
  double tol = kDefaultTol;
  bool passed = false;
};

struct ChannelComparison {
  bool same = false;
  double defect = 0.0;  // ‖choi(c1) − choi(c2)‖_max
};

struct StandardChannelSpec {
  std::string name;  // dephasing | depolarizing | amplitude_damping | unitary
  Index dim = 2;
  std::map<std::string, double> params;
  std::optional<ComplexMatrix> unitary;
};

ValidationReport validate_kraus(const KrausChannel& channel, double tol = kDefaultTol);

/// Throws InvalidChannel when the completeness defect exceeds tol.
void require_valid(const KrausChannel& channel, double tol = kDefaultTol);

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho,
                    double tol = kDefaultTol);

/// (1^R ⊗ $)(ρ^{RQ}) for a state on R ⊗ Q with the given reference dimension.
DensityMatrix apply_extended(const KrausChannel& channel, const DensityMatrix& rho_rq, Index dim_r,
                             double tol = kDefaultTol);

ChoiMatrix choi(const KrausChannel& channel, double tol = kDefaultTol);

/// Kraus operators from the eigenvectors of D scaled by √w, for eigenvalues
/// w above rank_cutoff, in descending eigenvalue order.
KrausChannel kraus_from_choi(const ChoiMatrix& choi_matrix, double rank_cutoff = 1e-10);

/// Stinespring dilation with dim_e equal to the number of Kraus operators.
UnitaryDilation dilation_from_kraus(const KrausChannel& channel, double tol = kDefaultTol);

KrausChannel kraus_from_dilation(const UnitaryDilation& dilation);

/// Representation in which W_μν = Tr A_μ ρ A_ν† is diagonal. Operators that
/// vanish identically are dropped.
KrausChannel canonical_kraus(const KrausChannel& channel, const DensityMatrix& rho,
                             double tol = kDefaultTol);

ChannelComparison same_channel(const KrausChannel& c1, const KrausChannel& c2,
                               double tol = kDefaultTol);

/// B_μ = Σ_ν U_μν A_ν after padding the operator list with zeros to
/// U.rows() entries.
KrausChannel mix_kraus(const KrausChannel& channel, const ComplexMatrix& mixing);

KrausChannel dephasing(Index dim);
KrausChannel depolarizing(double p);
KrausChannel amplitude_damping(double gamma);
KrausChannel unitary_channel(const ComplexMatrix& u, double tol = kDefaultTol);
KrausChannel make_standard_channel(const StandardChannelSpec& spec);

/// Pauli matrices, used by the depolarizing constructor.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace qchan
