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

#include "qchan/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qchan {

namespace {

void require_nonempty(const ComplexMatrix& m, const char* what) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": empty matrix");
  }
}

void require_square(const ComplexMatrix& m, const char* what) {
  require_nonempty(m, what);
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": matrix is " +
                                                  std::to_string(m.rows()) + "x" +
                                                  std::to_string(m.cols()) + ", expected square");
  }
}

bool all_finite(const ComplexMatrix& m) { return m.real().allFinite() && m.imag().allFinite(); }

}  // namespace

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double unitarity_defect(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()));
}

void fix_phase(Eigen::Ref<ComplexVector> column) {
  for (Index i = 0; i < column.size(); ++i) {
    const double modulus = std::abs(column(i));
    if (modulus > kPhaseThreshold) {
      column *= std::conj(column(i)) / modulus;
      column(i) = Complex(modulus, 0.0);
      return;
    }
  }
}

EigenDecomposition hermitian_eig(const ComplexMatrix& m, double tol) {
  require_square(m, "hermitian_eig");
  const double asymmetry = max_abs(m - m.adjoint());
  if (!(asymmetry <= tol)) {
    throw Error(ErrorCode::NotHermitian,
                "hermitian_eig: asymmetry " + std::to_string(asymmetry) + " exceeds tolerance");
  }
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success || !solver.eigenvalues().allFinite()) {
    throw Error(ErrorCode::NoConvergence, "hermitian_eig: eigensolver did not converge");
  }
  EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  for (Index k = 0; k < out.eigenvectors.cols(); ++k) fix_phase(out.eigenvectors.col(k));
  return out;
}

SvdResult svd(const ComplexMatrix& m) {
  require_nonempty(m, "svd");
  Eigen::JacobiSVD<ComplexMatrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SvdResult out{solver.matrixU(), solver.singularValues(), solver.matrixV().adjoint()};
  if (!all_finite(out.u) || !all_finite(out.v_adjoint) || !out.singular_values.allFinite()) {
    throw Error(ErrorCode::NoConvergence, "svd: non-finite factors");
  }
  return out;
}

ComplexMatrix polar_unitary(const ComplexMatrix& m) {
  require_square(m, "polar_unitary");
  const SvdResult f = svd(m);
  return f.u * f.v_adjoint;
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m, double tol) {
  const EigenDecomposition eig = hermitian_eig(m, tol);
  RealVector roots(eig.eigenvalues.size());
  for (Index k = 0; k < roots.size(); ++k) {
    const double lambda = eig.eigenvalues(k);
    if (lambda < -kClipFloor) {
      throw Error(ErrorCode::NotPSD,
                  "matrix_sqrt_psd: eigenvalue " + std::to_string(lambda) + " is negative");
    }
    roots(k) = std::sqrt(std::max(lambda, 0.0));
  }
  return eig.eigenvectors * roots.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Index dim_first, Index dim_second, Keep keep) {
  if (dim_first < 1 || dim_second < 1 || m.rows() != dim_first * dim_second ||
      m.cols() != m.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "partial_trace: matrix size does not match " +
                                                  std::to_string(dim_first) + "x" +
                                                  std::to_string(dim_second));
  }
  if (keep == Keep::first) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_first, dim_first);
    for (Index i = 0; i < dim_first; ++i)
      for (Index j = 0; j < dim_first; ++j)
        for (Index b = 0; b < dim_second; ++b)
          out(i, j) += m(i * dim_second + b, j * dim_second + b);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_second, dim_second);
  for (Index a = 0; a < dim_first; ++a)
    out += m.block(a * dim_second, a * dim_second, dim_second, dim_second);
  return out;
}

ComplexMatrix complete_to_unitary(const ComplexMatrix& v, double tol) {
  require_nonempty(v, "complete_to_unitary");
  const Index n = v.rows();
  const Index k = v.cols();
  if (k > n) {
    throw Error(ErrorCode::NotIsometry, "complete_to_unitary: more columns than rows");
  }
  const double defect = max_abs(v.adjoint() * v - ComplexMatrix::Identity(k, k));
  if (!(defect <= tol)) {
    throw Error(ErrorCode::NotIsometry, "complete_to_unitary: columns not orthonormal (defect " +
                                            std::to_string(defect) + ")");
  }
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  u.leftCols(k) = v;
  Index filled = k;
  for (Index j = 0; j < n && filled < n; ++j) {
    ComplexVector residual = ComplexVector::Unit(n, j);
    // Two passes keep the residual orthogonal to working precision.
    for (int pass = 0; pass < 2; ++pass) {
      const auto basis = u.leftCols(filled);
      residual -= basis * (basis.adjoint() * residual);
    }
    const double norm = residual.norm();
    if (norm < kPhaseThreshold) continue;
    residual /= norm;
    fix_phase(residual);
    u.col(filled++) = residual;
  }
  if (filled != n) {
    throw Error(ErrorCode::NoConvergence, "complete_to_unitary: basis exhausted");
  }
  return u;
}

ComplexMatrix random_unitary(Index dim, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(dim, dim);
  for (Index j = 0; j < dim; ++j)
    for (Index i = 0; i < dim; ++i) g(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < dim; ++j) {
    const double modulus = std::abs(r(j, j));
    if (modulus > 0) q.col(j) *= r(j, j) / modulus;
  }
  return q;
}

}  // namespace qchan
