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

#include "qchan/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qchan {

namespace {

bool all_finite(const ComplexMatrix& m) { return m.real().allFinite() && m.imag().allFinite(); }

void require_unitary_basis(const ComplexMatrix& basis, Index dim, const char* what) {
  if (basis.rows() != dim || basis.cols() != dim) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": basis must be " +
                                                  std::to_string(dim) + "x" + std::to_string(dim));
  }
  if (unitarity_defect(basis) > kDefaultTol) {
    throw Error(ErrorCode::NotUnitaryMatrix, std::string(what) + ": basis is not unitary");
  }
}

}  // namespace

DensityMatrix DensityMatrix::from_matrix(const ComplexMatrix& m, double tol) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    throw Error(ErrorCode::InvalidState, "density matrix must be square and non-empty");
  }
  if (!all_finite(m)) throw Error(ErrorCode::InvalidState, "density matrix has non-finite entries");
  const double asymmetry = max_abs(m - m.adjoint());
  if (asymmetry > tol) {
    throw Error(ErrorCode::InvalidState,
                "density matrix not Hermitian (asymmetry " + std::to_string(asymmetry) + ")");
  }
  const Complex trace = m.trace();
  if (std::abs(trace - 1.0) > tol) {
    throw Error(ErrorCode::InvalidState,
                "density matrix trace " + std::to_string(trace.real()) + " differs from 1");
  }
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  const double lowest = hermitian_eig(sym, tol).eigenvalues.minCoeff();
  if (lowest < -tol) {
    throw Error(ErrorCode::InvalidState,
                "density matrix has negative eigenvalue " + std::to_string(lowest));
  }
  return DensityMatrix(sym);
}

DensityMatrix DensityMatrix::unchecked(const ComplexMatrix& m) {
  return DensityMatrix(0.5 * (m + m.adjoint()));
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

PureState PureState::from_vector(const ComplexVector& v, double tol) {
  if (v.size() < 1) throw Error(ErrorCode::InvalidState, "pure state vector is empty");
  if (!all_finite(v)) throw Error(ErrorCode::InvalidState, "pure state has non-finite entries");
  const double norm = v.norm();
  if (std::abs(norm - 1.0) > tol) {
    throw Error(ErrorCode::InvalidState,
                "pure state norm " + std::to_string(norm) + " differs from 1");
  }
  return PureState(v);
}

PureState PureState::normalized(const ComplexVector& v) {
  const double norm = v.norm();
  if (!(norm > 0.0)) throw Error(ErrorCode::ZeroWeight, "cannot normalize a null vector");
  return PureState(v / norm);
}

PureState PureState::basis(Index dim, Index k) { return PureState(ComplexVector::Unit(dim, k)); }

DensityMatrix PureState::density() const {
  return DensityMatrix::unchecked(vector_ * vector_.adjoint());
}

BipartitePureState BipartitePureState::from_vector(Index dim_r, Index dim_q, const ComplexVector& v,
                                                   double tol) {
  if (dim_r < 1 || dim_q < 1 || v.size() != dim_r * dim_q) {
    throw Error(ErrorCode::DimensionMismatch, "bipartite vector length must be dim_r * dim_q");
  }
  return BipartitePureState(dim_r, dim_q, PureState::from_vector(v, tol).vector());
}

ComplexMatrix BipartitePureState::coefficients() const {
  ComplexMatrix c(dim_r_, dim_q_);
  for (Index r = 0; r < dim_r_; ++r)
    for (Index q = 0; q < dim_q_; ++q) c(r, q) = vector_(r * dim_q_ + q);
  return c;
}

ComplexMatrix BipartitePureState::projector() const { return vector_ * vector_.adjoint(); }

DensityMatrix BipartitePureState::reduced_r() const {
  const ComplexMatrix c = coefficients();
  return DensityMatrix::unchecked(c * c.adjoint());
}

DensityMatrix BipartitePureState::reduced_q() const {
  const ComplexMatrix c = coefficients();
  return DensityMatrix::unchecked(c.transpose() * c.conjugate());
}

PureEnsemble::PureEnsemble(std::vector<double> probs, std::vector<PureState> states, double tol)
    : probs_(std::move(probs)), states_(std::move(states)) {
  if (states_.empty() || probs_.size() != states_.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "ensemble needs one probability per state and at least one state");
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0) {
      throw Error(ErrorCode::NotADistribution, "ensemble probabilities must be non-negative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > tol) {
    throw Error(ErrorCode::NotADistribution,
                "ensemble probabilities sum to " + std::to_string(total));
  }
  for (const auto& s : states_) {
    if (s.dim() != states_.front().dim()) {
      throw Error(ErrorCode::DimensionMismatch, "ensemble states have unequal dimensions");
    }
  }
}

DensityMatrix density_from_ensemble(const PureEnsemble& ensemble) {
  const Index d = ensemble.dim();
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    const ComplexVector& v = ensemble.states()[i].vector();
    rho += ensemble.probs()[i] * (v * v.adjoint());
  }
  return DensityMatrix::unchecked(rho);
}

BipartitePureState purify(const DensityMatrix& rho) {
  const Index d = rho.dim();
  const EigenDecomposition eig = hermitian_eig(rho.matrix());
  ComplexVector psi = ComplexVector::Zero(d * d);
  for (Index k = 0; k < d; ++k) {
    const Index src = d - 1 - k;  // descending eigenvalue order
    const double weight = std::sqrt(std::max(eig.eigenvalues(src), 0.0));
    psi.segment(k * d, d) = weight * eig.eigenvectors.col(src);
  }
  // Clipping can move the norm by ~1e-10; renormalize.
  psi /= psi.norm();
  return BipartitePureState::from_vector(d, d, psi);
}

SchmidtDecomposition schmidt(const BipartitePureState& psi, double cutoff) {
  const SvdResult f = svd(psi.coefficients());
  Index kept = 0;
  while (kept < f.singular_values.size() && f.singular_values(kept) > cutoff) ++kept;
  SchmidtDecomposition out;
  out.coefficients = f.singular_values.head(kept);
  out.basis_r = f.u.leftCols(kept);
  out.basis_q = f.v_adjoint.topRows(kept).transpose();
  return out;
}

ComplexMatrix connecting_unitary_r(const BipartitePureState& psi1, const BipartitePureState& psi2,
                                   double tol) {
  if (psi1.dim_r() != psi2.dim_r() || psi1.dim_q() != psi2.dim_q()) {
    throw Error(ErrorCode::DimensionMismatch, "connecting_unitary_r: dimension mismatch");
  }
  const double gap = max_abs(psi1.reduced_q().matrix() - psi2.reduced_q().matrix());
  if (gap > tol) {
    throw Error(ErrorCode::NotSamePartialState,
                "connecting_unitary_r: reduced states differ by " + std::to_string(gap));
  }
  // (U ⊗ 1) acts as U·C on the coefficient matrix; the polar factor of the
  // cross-Gram matrix C2 C1† maximizes Re⟨Ψ2|(U ⊗ 1)|Ψ1⟩, which reaches 1
  // exactly when both states share the reduced state. Degenerate Schmidt
  // blocks are handled by the same factor.
  const ComplexMatrix c1 = psi1.coefficients();
  const ComplexMatrix c2 = psi2.coefficients();
  return polar_unitary(c2 * c1.adjoint());
}

PureState index_state(const PureState& phi, const ComplexMatrix& basis_r,
                      const ComplexMatrix& basis_q) {
  const Index d = phi.dim();
  require_unitary_basis(basis_r, d, "index_state");
  require_unitary_basis(basis_q, d, "index_state");
  const ComplexVector c = basis_q.adjoint() * phi.vector();
  return PureState::normalized(basis_r * c.conjugate());
}

PureState index_state(const PureState& phi) {
  const ComplexMatrix id = ComplexMatrix::Identity(phi.dim(), phi.dim());
  return index_state(phi, id, id);
}

RelativeState relative_state(const BipartitePureState& psi, const PureState& zeta_r,
                             bool normalize) {
  if (zeta_r.dim() != psi.dim_r()) {
    throw Error(ErrorCode::DimensionMismatch, "relative_state: reference state dimension");
  }
  RelativeState out;
  out.vector = psi.coefficients().transpose() * zeta_r.vector().conjugate();
  out.weight = out.vector.squaredNorm();
  if (normalize) {
    if (out.weight <= 1e-12) {
      throw Error(ErrorCode::ZeroWeight, "relative_state: outcome has zero weight");
    }
    out.vector /= std::sqrt(out.weight);
  }
  return out;
}

PureEnsemble ensemble_from_measurement(const BipartitePureState& psi,
                                       const ComplexMatrix& basis_r) {
  require_unitary_basis(basis_r, psi.dim_r(), "ensemble_from_measurement");
  std::vector<double> probs;
  std::vector<PureState> states;
  for (Index j = 0; j < basis_r.cols(); ++j) {
    const RelativeState rel = relative_state(psi, PureState::from_vector(basis_r.col(j)), false);
    if (rel.weight <= 1e-12) continue;
    probs.push_back(rel.weight);
    states.push_back(PureState::normalized(rel.vector));
  }
  // Weights sum to ‖Ψ‖² up to rounding; rescale so the simplex check is exact.
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (double& p : probs) p /= total;
  return PureEnsemble(std::move(probs), std::move(states));
}

double spectrum_entropy(const RealVector& eigenvalues) {
  double h = 0.0;
  for (Index k = 0; k < eigenvalues.size(); ++k) {
    const double lambda = eigenvalues(k);
    if (lambda > 0.0) h -= lambda * std::log2(lambda);
  }
  return std::max(h, 0.0);
}

double von_neumann_entropy(const ComplexMatrix& hermitian) {
  return spectrum_entropy(hermitian_eig(hermitian).eigenvalues);
}

double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }

std::vector<double> measurement_probabilities(const DensityMatrix& rho,
                                              const ComplexMatrix& basis) {
  require_unitary_basis(basis, rho.dim(), "measurement_probabilities");
  std::vector<double> p(static_cast<std::size_t>(basis.cols()));
  for (Index j = 0; j < basis.cols(); ++j) {
    const double value = (basis.col(j).adjoint() * rho.matrix() * basis.col(j))(0, 0).real();
    p[static_cast<std::size_t>(j)] = std::max(value, 0.0);
  }
  return p;
}

}  // namespace qchan
