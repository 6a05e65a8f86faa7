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

#include "qchan/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qchan {

namespace {

constexpr double kNullWeight = 1e-12;

bool all_finite(const ComplexMatrix& m) { return m.real().allFinite() && m.imag().allFinite(); }

void require_dims(const KrausChannel& channel, Index dim, const char* what) {
  if (channel.dim() != dim) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": channel acts on dimension " +
                                                  std::to_string(channel.dim()) + ", state has " +
                                                  std::to_string(dim));
  }
}

// Column k * d + q holds A(q, k): the R-major vector (1 ⊗ A)|Ψ̃⟩.
ComplexVector choi_vector(const ComplexMatrix& a) {
  const Index d = a.rows();
  ComplexVector v(d * d);
  for (Index k = 0; k < d; ++k)
    for (Index q = 0; q < d; ++q) v(k * d + q) = a(q, k);
  return v;
}

ComplexMatrix w_components(const KrausChannel& channel, const DensityMatrix& rho) {
  const auto& ops = channel.operators();
  const Index m = static_cast<Index>(ops.size());
  std::vector<ComplexMatrix> a_rho;
  a_rho.reserve(ops.size());
  for (const auto& a : ops) a_rho.push_back(a * rho.matrix());
  ComplexMatrix w(m, m);
  for (Index mu = 0; mu < m; ++mu)
    for (Index nu = 0; nu < m; ++nu) w(mu, nu) = (a_rho[mu] * ops[nu].adjoint()).trace();
  return 0.5 * (w + w.adjoint());
}

// Eigenvectors of a Hermitian matrix ordered by descending eigenvalue.
EigenDecomposition descending_eig(const ComplexMatrix& m) {
  EigenDecomposition eig = hermitian_eig(m);
  eig.eigenvalues.reverseInPlace();
  eig.eigenvectors = eig.eigenvectors.rowwise().reverse().eval();
  return eig;
}

// Σ_i coeffs(i) · ops[i].
ComplexMatrix combine(const std::vector<ComplexMatrix>& ops, const ComplexVector& coeffs) {
  ComplexMatrix out = ComplexMatrix::Zero(ops.front().rows(), ops.front().cols());
  for (std::size_t i = 0; i < ops.size(); ++i) out += coeffs(static_cast<Index>(i)) * ops[i];
  return out;
}

}  // namespace

KrausChannel::KrausChannel(std::vector<ComplexMatrix> operators)
    : operators_(std::move(operators)) {
  if (operators_.empty()) {
    throw Error(ErrorCode::InvalidChannel, "channel needs at least one Kraus operator");
  }
  const Index d = operators_.front().rows();
  for (const auto& a : operators_) {
    if (d < 1 || a.rows() != d || a.cols() != d) {
      throw Error(ErrorCode::DimensionMismatch,
                  "Kraus operators must be square with a common dimension");
    }
    if (!all_finite(a)) throw Error(ErrorCode::InvalidChannel, "Kraus operator not finite");
  }
}

double KrausChannel::completeness_defect() const {
  const Index d = dim();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& a : operators_) sum += a.adjoint() * a;
  return max_abs(sum - ComplexMatrix::Identity(d, d));
}

UnitaryDilation::UnitaryDilation(Index dim_q, Index dim_e, ComplexMatrix unitary, double tol)
    : dim_q_(dim_q), dim_e_(dim_e), unitary_(std::move(unitary)) {
  if (dim_q < 1 || dim_e < 1 || unitary_.rows() != dim_q * dim_e ||
      unitary_.cols() != unitary_.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "dilation unitary must be (dim_q*dim_e) square");
  }
  const double defect = unitarity_defect(unitary_);
  if (!(defect <= tol)) {
    throw Error(ErrorCode::NotUnitary,
                "dilation is not unitary (defect " + std::to_string(defect) + ")");
  }
}

ChoiMatrix::ChoiMatrix(Index dim, ComplexMatrix matrix, double tol)
    : dim_(dim), matrix_(std::move(matrix)) {
  if (dim < 1 || matrix_.rows() != dim * dim || matrix_.cols() != dim * dim) {
    throw Error(ErrorCode::DimensionMismatch, "Choi matrix must be d^2 x d^2");
  }
  if (!all_finite(matrix_)) throw Error(ErrorCode::InvalidChannel, "Choi matrix not finite");
  if (max_abs(matrix_ - matrix_.adjoint()) > tol) {
    throw Error(ErrorCode::InvalidChannel, "Choi matrix is not Hermitian");
  }
  matrix_ = 0.5 * (matrix_ + matrix_.adjoint()).eval();
  const double trace = matrix_.trace().real();
  if (std::abs(trace - static_cast<double>(dim)) > std::max(tol, 1e-8)) {
    throw Error(ErrorCode::InvalidChannel,
                "Choi matrix trace " + std::to_string(trace) + " differs from d");
  }
  const double lowest = hermitian_eig(matrix_, tol).eigenvalues.minCoeff();
  if (lowest < -tol) {
    throw Error(ErrorCode::NotPSD, "Choi matrix has eigenvalue " + std::to_string(lowest));
  }
}

ValidationReport validate_kraus(const KrausChannel& channel, double tol) {
  ValidationReport report;
  report.completeness_defect = channel.completeness_defect();
  report.tol = tol;
  report.passed = report.completeness_defect <= tol;
  return report;
}

void require_valid(const KrausChannel& channel, double tol) {
  const ValidationReport report = validate_kraus(channel, tol);
  if (!report.passed) {
    throw Error(
        ErrorCode::InvalidChannel,
        "completeness defect " + std::to_string(report.completeness_defect) + " exceeds tolerance");
  }
}

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho, double tol) {
  require_dims(channel, rho.dim(), "apply");
  require_valid(channel, tol);
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (const auto& a : channel.operators()) out += a * rho.matrix() * a.adjoint();
  return DensityMatrix::unchecked(out);
}

DensityMatrix apply_extended(const KrausChannel& channel, const DensityMatrix& rho_rq, Index dim_r,
                             double tol) {
  const Index d = channel.dim();
  if (dim_r < 1 || rho_rq.dim() != dim_r * d) {
    throw Error(ErrorCode::DimensionMismatch, "apply_extended: state is not on R (x) Q");
  }
  require_valid(channel, tol);
  // Block (r, s) of the R-major matrix transforms as A · block · A†.
  ComplexMatrix out = ComplexMatrix::Zero(rho_rq.dim(), rho_rq.dim());
  for (const auto& a : channel.operators()) {
    for (Index r = 0; r < dim_r; ++r)
      for (Index s = 0; s < dim_r; ++s)
        out.block(r * d, s * d, d, d) +=
            a * rho_rq.matrix().block(r * d, s * d, d, d) * a.adjoint();
  }
  return DensityMatrix::unchecked(out);
}

ChoiMatrix choi(const KrausChannel& channel, double tol) {
  require_valid(channel, tol);
  const Index d = channel.dim();
  ComplexMatrix d_mat = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& a : channel.operators()) {
    const ComplexVector v = choi_vector(a);
    d_mat += v * v.adjoint();
  }
  return ChoiMatrix(d, d_mat, std::max(tol, 1e-8));
}

KrausChannel kraus_from_choi(const ChoiMatrix& choi_matrix, double rank_cutoff) {
  const Index d = choi_matrix.dim();
  const EigenDecomposition eig = descending_eig(choi_matrix.matrix());
  if (eig.eigenvalues.minCoeff() < -kDefaultTol * std::max(1.0, static_cast<double>(d))) {
    throw Error(ErrorCode::NotPSD, "kraus_from_choi: Choi matrix is not positive");
  }
  std::vector<ComplexMatrix> ops;
  for (Index k = 0; k < eig.eigenvalues.size(); ++k) {
    const double w = eig.eigenvalues(k);
    if (w <= rank_cutoff) break;
    const ComplexVector scaled = std::sqrt(w) * eig.eigenvectors.col(k);
    ComplexMatrix a(d, d);
    for (Index col = 0; col < d; ++col)
      for (Index row = 0; row < d; ++row) a(row, col) = scaled(col * d + row);
    ops.push_back(std::move(a));
  }
  if (ops.empty()) {
    throw Error(ErrorCode::TracePreservationViolated, "kraus_from_choi: Choi matrix is zero");
  }
  KrausChannel out(std::move(ops));
  const double defect = out.completeness_defect();
  if (defect > 1e-7) {
    throw Error(ErrorCode::TracePreservationViolated,
                "kraus_from_choi: completeness defect " + std::to_string(defect));
  }
  return out;
}

UnitaryDilation dilation_from_kraus(const KrausChannel& channel, double tol) {
  require_valid(channel, tol);
  const Index d = channel.dim();
  const Index m = static_cast<Index>(channel.size());
  const auto& ops = channel.operators();
  ComplexMatrix isometry = ComplexMatrix::Zero(d * m, d);
  for (Index mu = 0; mu < m; ++mu)
    for (Index q = 0; q < d; ++q)
      for (Index k = 0; k < d; ++k) isometry(q * m + mu, k) = ops[mu](q, k);
  // Completeness bounds the isometry defect by roughly tol; allow slack for
  // the accumulated products.
  const ComplexMatrix completed = complete_to_unitary(isometry, std::max(10.0 * tol, 1e-9));

  // Column k * m is the image of |k⟩ ⊗ |0^E⟩; the completion fills the rest
  // in increasing column order.
  ComplexMatrix u(d * m, d * m);
  Index next = d;
  for (Index col = 0; col < d * m; ++col) {
    if (col % m == 0) {
      u.col(col) = completed.col(col / m);
    } else {
      u.col(col) = completed.col(next++);
    }
  }
  return UnitaryDilation(d, m, std::move(u), std::max(10.0 * tol, 1e-9));
}

KrausChannel kraus_from_dilation(const UnitaryDilation& dilation) {
  const Index d = dilation.dim_q();
  const Index m = dilation.dim_e();
  const ComplexMatrix& u = dilation.unitary();
  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<std::size_t>(m));
  for (Index mu = 0; mu < m; ++mu) {
    ComplexMatrix a(d, d);
    for (Index q = 0; q < d; ++q)
      for (Index k = 0; k < d; ++k) a(q, k) = u(q * m + mu, k * m);
    ops.push_back(std::move(a));
  }
  return KrausChannel(std::move(ops));
}

KrausChannel canonical_kraus(const KrausChannel& channel, const DensityMatrix& rho, double tol) {
  require_dims(channel, rho.dim(), "canonical_kraus");
  require_valid(channel, tol);
  const auto& ops = channel.operators();
  const EigenDecomposition eig = descending_eig(w_components(channel, rho));

  std::vector<ComplexMatrix> kept;
  std::vector<ComplexMatrix> null_block;
  for (Index nu = 0; nu < eig.eigenvalues.size(); ++nu) {
    ComplexMatrix b = combine(ops, eig.eigenvectors.col(nu).conjugate());
    if (eig.eigenvalues(nu) >= kNullWeight) {
      kept.push_back(std::move(b));
    } else {
      null_block.push_back(std::move(b));
    }
  }

  // Operators with zero weight on ρ may still act outside its support.
  // Rotate them to be Hilbert-Schmidt orthogonal and keep the non-zero ones.
  if (!null_block.empty()) {
    const Index n = static_cast<Index>(null_block.size());
    ComplexMatrix gram(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) gram(i, j) = (null_block[i].adjoint() * null_block[j]).trace();
    const EigenDecomposition g = descending_eig(0.5 * (gram + gram.adjoint()));
    for (Index j = 0; j < n; ++j) {
      if (g.eigenvalues(j) <= kNullWeight) break;
      kept.push_back(combine(null_block, g.eigenvectors.col(j)));
    }
  }
  return KrausChannel(std::move(kept));
}

ChannelComparison same_channel(const KrausChannel& c1, const KrausChannel& c2, double tol) {
  if (c1.dim() != c2.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "same_channel: channels act on different dims");
  }
  ChannelComparison out;
  out.defect = max_abs(choi(c1).matrix() - choi(c2).matrix());
  out.same = out.defect <= tol;
  return out;
}

KrausChannel mix_kraus(const KrausChannel& channel, const ComplexMatrix& mixing) {
  const Index m = static_cast<Index>(channel.size());
  if (mixing.rows() != mixing.cols() || mixing.rows() < m) {
    throw Error(ErrorCode::DimensionMismatch,
                "mix_kraus: mixing matrix must be square with at least m rows");
  }
  if (unitarity_defect(mixing) > kDefaultTol) {
    throw Error(ErrorCode::NotUnitaryMatrix, "mix_kraus: mixing matrix is not unitary");
  }
  std::vector<ComplexMatrix> padded = channel.operators();
  padded.resize(static_cast<std::size_t>(mixing.rows()),
                ComplexMatrix::Zero(channel.dim(), channel.dim()));
  std::vector<ComplexMatrix> mixed;
  mixed.reserve(padded.size());
  for (Index mu = 0; mu < mixing.rows(); ++mu) {
    mixed.push_back(combine(padded, mixing.row(mu).transpose()));
  }
  return KrausChannel(std::move(mixed));
}

ComplexMatrix pauli_x() {
  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

ComplexMatrix pauli_y() {
  ComplexMatrix y(2, 2);
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  return y;
}

ComplexMatrix pauli_z() {
  ComplexMatrix z(2, 2);
  z << 1, 0, 0, -1;
  return z;
}

KrausChannel dephasing(Index dim) {
  if (dim < 2) throw Error(ErrorCode::ParamOutOfRange, "dephasing: dimension must be >= 2");
  std::vector<ComplexMatrix> ops;
  for (Index mu = 0; mu < dim; ++mu) {
    ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
    a(mu, mu) = 1.0;
    ops.push_back(std::move(a));
  }
  return KrausChannel(std::move(ops));
}

KrausChannel depolarizing(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::ParamOutOfRange, "depolarizing: p must lie in [0, 1]");
  }
  const double side = std::sqrt(p / 4.0);
  return KrausChannel({std::sqrt(1.0 - 3.0 * p / 4.0) * ComplexMatrix::Identity(2, 2),
                       side * pauli_x(), side * pauli_y(), side * pauli_z()});
}

KrausChannel amplitude_damping(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw Error(ErrorCode::ParamOutOfRange, "amplitude_damping: gamma must lie in [0, 1]");
  }
  ComplexMatrix a0 = ComplexMatrix::Zero(2, 2);
  a0(0, 0) = 1.0;
  a0(1, 1) = std::sqrt(1.0 - gamma);
  ComplexMatrix a1 = ComplexMatrix::Zero(2, 2);
  a1(0, 1) = std::sqrt(gamma);
  return KrausChannel({a0, a1});
}

KrausChannel unitary_channel(const ComplexMatrix& u, double tol) {
  if (u.rows() < 1 || u.rows() != u.cols() || !(unitarity_defect(u) <= tol)) {
    throw Error(ErrorCode::ParamOutOfRange, "unitary: matrix is not unitary");
  }
  return KrausChannel({u});
}

KrausChannel make_standard_channel(const StandardChannelSpec& spec) {
  const auto param = [&](const char* key) {
    const auto it = spec.params.find(key);
    if (it == spec.params.end()) {
      throw Error(ErrorCode::ParamOutOfRange,
                  spec.name + ": missing parameter \"" + std::string(key) + "\"");
    }
    return it->second;
  };
  const auto require_qubit = [&] {
    if (spec.dim != 2) throw Error(ErrorCode::ParamOutOfRange, spec.name + ": requires dim 2");
  };
  if (spec.name == "dephasing") return dephasing(spec.dim);
  if (spec.name == "depolarizing") {
    require_qubit();
    return depolarizing(param("p"));
  }
  if (spec.name == "amplitude_damping") {
    require_qubit();
    return amplitude_damping(param("gamma"));
  }
  if (spec.name == "unitary") {
    if (!spec.unitary) throw Error(ErrorCode::ParamOutOfRange, "unitary: missing matrix");
    if (spec.unitary->rows() != spec.dim) {
      throw Error(ErrorCode::ParamOutOfRange, "unitary: matrix does not match dim");
    }
    return unitary_channel(*spec.unitary, 1e-9);
  }
  throw Error(ErrorCode::UnknownChannelName, "unknown channel \"" + spec.name + "\"");
}

}  // namespace qchan
