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

#include <vector>

#include "qchan/numerics.hpp"

namespace qchan {

/// Unit-trace positive semidefinite operator. Construction validates the
/// invariants and stores the Hermitian part of the input.
class DensityMatrix {
 public:
  /// Throws InvalidState when the matrix is not Hermitian, not PSD, or
  /// not unit trace within tol.
  static DensityMatrix from_matrix(const ComplexMatrix& m, double tol = kDefaultTol);

  /// Wraps a matrix produced by a trusted computation; only hermitizes.
  static DensityMatrix unchecked(const ComplexMatrix& m);

  static DensityMatrix maximally_mixed(Index dim);

  Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  explicit DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {}
  ComplexMatrix matrix_;
};

class PureState {
 public:
  /// Throws InvalidState unless ‖v‖ = 1 within tol.
  static PureState from_vector(const ComplexVector& v, double tol = kDefaultTol);
  /// Scales v to unit norm; throws ZeroWeight for a null vector.
  static PureState normalized(const ComplexVector& v);
  static PureState basis(Index dim, Index k);

  Index dim() const { return vector_.size(); }
  const ComplexVector& vector() const { return vector_; }
  DensityMatrix density() const;

 private:
  explicit PureState(ComplexVector v) : vector_(std::move(v)) {}
  ComplexVector vector_;
};

/// Pure state on R ⊗ Q stored R-major: entry r * dim_q + q.
class BipartitePureState {
 public:
  static BipartitePureState from_vector(Index dim_r, Index dim_q, const ComplexVector& v,
                                        double tol = kDefaultTol);

  Index dim_r() const { return dim_r_; }
  Index dim_q() const { return dim_q_; }
  const ComplexVector& vector() const { return vector_; }

  /// Coefficient matrix C with C(r, q) = ⟨r q|Ψ⟩.
  ComplexMatrix coefficients() const;
  /// |Ψ⟩⟨Ψ| on R ⊗ Q.
  ComplexMatrix projector() const;
  DensityMatrix reduced_r() const;
  DensityMatrix reduced_q() const;

 private:
  BipartitePureState(Index dim_r, Index dim_q, ComplexVector v)
      : dim_r_(dim_r), dim_q_(dim_q), vector_(std::move(v)) {}
  Index dim_r_;
  Index dim_q_;
  ComplexVector vector_;
};

struct SchmidtDecomposition {
  RealVector coefficients;  // √λ_k, descending
  ComplexMatrix basis_r;    // columns
  ComplexMatrix basis_q;    // columns
};

class PureEnsemble {
 public:
  /// Throws NotADistribution for a bad probability vector and
  /// DimensionMismatch for states of unequal dimension.
  PureEnsemble(std::vector<double> probs, std::vector<PureState> states, double tol = kDefaultTol);

  Index dim() const { return states_.front().dim(); }
  std::size_t size() const { return states_.size(); }
  const std::vector<double>& probs() const { return probs_; }
  const std::vector<PureState>& states() const { return states_; }

 private:
  std::vector<double> probs_;
  std::vector<PureState> states_;
};

struct RelativeState {
  ComplexVector vector;  // ⟨ζ^R|Ψ⟩, normalized on request
  double weight = 0.0;   // squared norm of the unnormalized vector
};

DensityMatrix density_from_ensemble(const PureEnsemble& ensemble);

/// Canonical purification Σ_k √λ_k |k^R⟩ ⊗ |λ_k⟩ with λ descending.
BipartitePureState purify(const DensityMatrix& rho);

SchmidtDecomposition schmidt(const BipartitePureState& psi, double cutoff = 1e-10);

/// Unitary U on R with (U ⊗ 1)|Ψ1⟩ = |Ψ2⟩. Both states must share the same
/// reduced state on Q.
ComplexMatrix connecting_unitary_r(const BipartitePureState& psi1, const BipartitePureState& psi2,
                                   double tol = kDefaultTol);

/// Conjugate-linear map Σ c_k |β_k⟩ ↦ Σ c_k* |α_k⟩. Bases are given as
/// the columns of unitary matrices.
PureState index_state(const PureState& phi, const ComplexMatrix& basis_r,
                      const ComplexMatrix& basis_q);
PureState index_state(const PureState& phi);

/// Partial inner product ⟨ζ^R|Ψ⟩. Throws ZeroWeight when normalization is
/// requested and the weight is at most 1e-12.
RelativeState relative_state(const BipartitePureState& psi, const PureState& zeta_r,
                             bool normalize);

/// Relative states for a projective measurement of R in the columns of
/// basis_r. Outcomes with weight at most 1e-12 are dropped.
PureEnsemble ensemble_from_measurement(const BipartitePureState& psi, const ComplexMatrix& basis_r);

/// Entropy in bits of a spectrum; entries below zero are clipped.
double spectrum_entropy(const RealVector& eigenvalues);

/// Von Neumann entropy in bits.
double von_neumann_entropy(const DensityMatrix& rho);
double von_neumann_entropy(const ComplexMatrix& hermitian);

/// Outcome probabilities ⟨a_j|ρ|a_j⟩ for the columns of a unitary basis.
std::vector<double> measurement_probabilities(const DensityMatrix& rho, const ComplexMatrix& basis);

}  // namespace qchan
