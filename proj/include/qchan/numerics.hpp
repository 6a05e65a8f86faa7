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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

#include "qchan/error.hpp"

namespace qchan {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;
using Rng = std::mt19937_64;

/// Default tolerance for structural checks (hermiticity, trace, completeness).
inline constexpr double kDefaultTol = 1e-9;

/// Eigenvalues in [-kClipFloor, 0) are treated as zero in PSD contexts.
inline constexpr double kClipFloor = 1e-10;

/// Entries with modulus below this are skipped by the phase convention and
/// by unitary completion.
inline constexpr double kPhaseThreshold = 1e-8;

struct EigenDecomposition {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // columns, unitary
};

struct SvdResult {
  ComplexMatrix u;
  RealVector singular_values;  // descending, >= 0
  ComplexMatrix v_adjoint;
};

enum class Keep { first, second };

/// Largest entry modulus, the ‖·‖_max norm used for every tolerance check.
double max_abs(const ComplexMatrix& m);

/// ‖U†U − 1‖_max.
double unitarity_defect(const ComplexMatrix& u);

/// Rotates the column so that its first entry with modulus above
/// kPhaseThreshold is real and positive.
void fix_phase(Eigen::Ref<ComplexVector> column);

/// Eigendecomposition of a Hermitian matrix. Eigenvectors follow the phase
/// convention of fix_phase. Throws NotHermitian when ‖M − M†‖_max > tol.
EigenDecomposition hermitian_eig(const ComplexMatrix& m, double tol = kDefaultTol);

SvdResult svd(const ComplexMatrix& m);

/// Unitary factor U V† of the polar decomposition. It maximizes Re Tr(W† M)
/// over unitaries W.
ComplexMatrix polar_unitary(const ComplexMatrix& m);

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Throws NotPSD when an eigenvalue lies below -kClipFloor.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m, double tol = kDefaultTol);

/// Kronecker product; row index of the result is i_a * rows(b) + i_b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix partial_trace(const ComplexMatrix& m, Index dim_first, Index dim_second, Keep keep);

/// Extends a matrix with orthonormal columns to a square unitary. The input
/// columns come first; the rest are Gram-Schmidt residuals of the canonical
/// basis vectors taken in index order.
ComplexMatrix complete_to_unitary(const ComplexMatrix& v, double tol = kDefaultTol);

/// Haar-distributed unitary (QR of a complex Ginibre matrix).
ComplexMatrix random_unitary(Index dim, Rng& rng);

}  // namespace qchan
