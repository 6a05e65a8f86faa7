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

#include "qchan/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qchan {

namespace {

void require_dims(const KrausChannel& channel, Index dim, const char* what) {
  if (channel.dim() != dim) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": channel acts on dimension " +
                                                  std::to_string(channel.dim()) + ", state has " +
                                                  std::to_string(dim));
  }
}

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

double entropy_bits(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log2(x);
  return h;
}

}  // namespace

std::vector<double> WMatrix::diagonal() const {
  std::vector<double> p(static_cast<std::size_t>(matrix.rows()));
  for (Index mu = 0; mu < matrix.rows(); ++mu)
    p[static_cast<std::size_t>(mu)] = matrix(mu, mu).real();
  return p;
}

JointDistribution::JointDistribution(Eigen::MatrixXd table, double tol) : table_(std::move(table)) {
  if (table_.size() == 0 || !table_.allFinite()) {
    throw Error(ErrorCode::NotADistribution, "joint table must be non-empty and finite");
  }
  if (table_.minCoeff() < -tol) {
    throw Error(ErrorCode::NotADistribution, "joint table has negative entries");
  }
  if (std::abs(table_.sum() - 1.0) > tol) {
    throw Error(ErrorCode::NotADistribution, "joint table sums to " + std::to_string(table_.sum()));
  }
  table_ = table_.cwiseMax(0.0);
}

std::vector<double> JointDistribution::marginal_x() const {
  const Eigen::VectorXd rows = table_.rowwise().sum();
  return {rows.data(), rows.data() + rows.size()};
}

std::vector<double> JointDistribution::marginal_y() const {
  const Eigen::VectorXd cols = table_.colwise().sum().transpose();
  return {cols.data(), cols.data() + cols.size()};
}

double uhlmann_fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != rho2.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "uhlmann_fidelity: states differ in dimension");
  }
  // Tr √(√ρ1 ρ2 √ρ1) is the nuclear norm of √ρ1 √ρ2 = L1 L2† up to unitaries,
  // with L = V √Λ. Eigenvalues at rounding level are dropped so their square
  // roots do not leak into the singular values.
  const auto factor = [](const DensityMatrix& rho) {
    const EigenDecomposition eig = hermitian_eig(rho.matrix());
    const double floor = 16.0 * std::numeric_limits<double>::epsilon() * double(rho.dim()) *
                         std::max(eig.eigenvalues.maxCoeff(), 0.0);
    RealVector roots(eig.eigenvalues.size());
    for (Index k = 0; k < roots.size(); ++k)
      roots(k) = eig.eigenvalues(k) > floor ? std::sqrt(eig.eigenvalues(k)) : 0.0;
    return ComplexMatrix(eig.eigenvectors * roots.cast<Complex>().asDiagonal());
  };
  const RealVector singular = svd(factor(rho1).adjoint() * factor(rho2)).singular_values;
  const double trace = singular.sum();
  return clamp_unit(trace * trace);
}

double entanglement_fidelity(const DensityMatrix& rho, const KrausChannel& channel, double tol) {
  require_dims(channel, rho.dim(), "entanglement_fidelity");
  require_valid(channel, tol);
  double f = 0.0;
  for (const auto& a : channel.operators()) f += std::norm((rho.matrix() * a).trace());
  return clamp_unit(f);
}

double entanglement_fidelity_purified(const DensityMatrix& rho, const KrausChannel& channel,
                                      double tol) {
  require_dims(channel, rho.dim(), "entanglement_fidelity_purified");
  const BipartitePureState psi = purify(rho);
  const DensityMatrix evolved =
      apply_extended(channel, DensityMatrix::unchecked(psi.projector()), rho.dim(), tol);
  return clamp_unit((psi.vector().adjoint() * evolved.matrix() * psi.vector())(0, 0).real());
}

double input_output_fidelity(const DensityMatrix& rho, const KrausChannel& channel, double tol) {
  require_dims(channel, rho.dim(), "input_output_fidelity");
  return uhlmann_fidelity(rho, apply(channel, rho, tol));
}

double average_ensemble_fidelity(const PureEnsemble& ensemble, const KrausChannel& channel,
                                 double tol) {
  require_dims(channel, ensemble.dim(), "average_ensemble_fidelity");
  double f = 0.0;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    const PureState& psi = ensemble.states()[i];
    const DensityMatrix out = apply(channel, psi.density(), tol);
    f += ensemble.probs()[i] * (psi.vector().adjoint() * out.matrix() * psi.vector())(0, 0).real();
  }
  return clamp_unit(f);
}

WMatrix w_matrix(const DensityMatrix& rho, const KrausChannel& channel, double tol) {
  require_dims(channel, rho.dim(), "w_matrix");
  require_valid(channel, tol);
  const auto& ops = channel.operators();
  const Index m = static_cast<Index>(ops.size());
  ComplexMatrix w(m, m);
  for (Index mu = 0; mu < m; ++mu) {
    const ComplexMatrix a_rho = ops[mu] * rho.matrix();
    for (Index nu = 0; nu < m; ++nu) w(mu, nu) = (a_rho * ops[nu].adjoint()).trace();
  }
  return WMatrix{0.5 * (w + w.adjoint())};
}

double entropy_exchange(const DensityMatrix& rho, const KrausChannel& channel, double tol) {
  return von_neumann_entropy(w_matrix(rho, channel, tol).matrix);
}

double entropy_exchange_purified(const DensityMatrix& rho, const KrausChannel& channel,
                                 double tol) {
  require_dims(channel, rho.dim(), "entropy_exchange_purified");
  const BipartitePureState psi = purify(rho);
  return von_neumann_entropy(
      apply_extended(channel, DensityMatrix::unchecked(psi.projector()), rho.dim(), tol));
}

EntropyBoundsReport entropy_bounds_report(const DensityMatrix& rho, const KrausChannel& channel,
                                          double tol) {
  EntropyBoundsReport r;
  r.input_entropy = von_neumann_entropy(rho);
  r.output_entropy = von_neumann_entropy(apply(channel, rho, tol));
  r.entropy_change = r.output_entropy - r.input_entropy;
  r.entropy_exchange = entropy_exchange(rho, channel, tol);
  r.lower_holds = r.entropy_exchange >= std::abs(r.entropy_change) - kBoundSlack;
  r.upper_holds = r.entropy_exchange <= r.input_entropy + r.output_entropy + kBoundSlack;
  return r;
}

double processed_objective(const DensityMatrix& rho, const KrausChannel& channel,
                           const ComplexMatrix& u) {
  const ComplexMatrix rho_u = rho.matrix() * u;
  double f = 0.0;
  for (const auto& a : channel.operators()) f += std::norm((rho_u * a).trace());
  return f;
}

AscentTrace ascend_processed_fidelity(const DensityMatrix& rho, const KrausChannel& channel,
                                      const ComplexMatrix& start, int max_steps) {
  require_dims(channel, rho.dim(), "processed_entanglement_fidelity");
  const Index d = rho.dim();
  AscentTrace trace;
  trace.unitary = start;
  double current = processed_objective(rho, channel, start);
  trace.objective.push_back(current);
  for (int step = 0; step < max_steps; ++step) {
    ComplexMatrix linear = ComplexMatrix::Zero(d, d);
    const ComplexMatrix rho_u = rho.matrix() * trace.unitary;
    for (const auto& a : channel.operators()) {
      const Complex c = (rho_u * a).trace();
      linear += std::conj(c) * (a * rho.matrix());
    }
    const ComplexMatrix candidate = polar_unitary(linear).adjoint();
    const double value = processed_objective(rho, channel, candidate);
    if (value < current) break;
    const double gain = value - current;
    trace.unitary = candidate;
    current = value;
    trace.objective.push_back(current);
    if (gain < 1e-12) break;
  }
  return trace;
}

ProcessedFidelity processed_entanglement_fidelity(const DensityMatrix& rho,
                                                  const KrausChannel& channel, unsigned restarts,
                                                  std::uint64_t seed, double tol) {
  require_dims(channel, rho.dim(), "processed_entanglement_fidelity");
  require_valid(channel, tol);
  const Index d = rho.dim();
  Rng rng(seed);
  ProcessedFidelity best{-1.0, ComplexMatrix::Identity(d, d)};
  const unsigned runs = std::max(restarts, 1u);
  for (unsigned run = 0; run < runs; ++run) {
    const ComplexMatrix start = run == 0 ? ComplexMatrix::Identity(d, d) : random_unitary(d, rng);
    const AscentTrace trace = ascend_processed_fidelity(rho, channel, start);
    if (trace.objective.back() > best.value) {
      best.value = trace.objective.back();
      best.unitary = trace.unitary;
    }
  }
  best.value = std::min(best.value, 1.0);
  return best;
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::ParamOutOfRange, "binary_entropy: x");
  return entropy_bits({x, 1.0 - x});
}

double shannon_entropy(const std::vector<double>& p, double tol) {
  if (p.empty()) throw Error(ErrorCode::NotADistribution, "empty distribution");
  double total = 0.0;
  for (double x : p) {
    if (!std::isfinite(x) || x < -tol) {
      throw Error(ErrorCode::NotADistribution, "distribution has a negative entry");
    }
    total += x;
  }
  if (std::abs(total - 1.0) > tol) {
    throw Error(ErrorCode::NotADistribution, "distribution sums to " + std::to_string(total));
  }
  return entropy_bits(p);
}

double mutual_information(const JointDistribution& joint) {
  const Eigen::MatrixXd& t = joint.table();
  const double joint_entropy = entropy_bits({t.data(), t.data() + t.size()});
  return entropy_bits(joint.marginal_x()) + entropy_bits(joint.marginal_y()) - joint_entropy;
}

double conditional_entropy(const JointDistribution& joint) {
  const Eigen::MatrixXd& t = joint.table();
  return entropy_bits({t.data(), t.data() + t.size()}) - entropy_bits(joint.marginal_y());
}

ClassicalFanoReport classical_fano(double error_probability, int alphabet_size,
                                   double conditional_entropy_x_given_y) {
  if (alphabet_size < 2) {
    throw Error(ErrorCode::ParamOutOfRange, "classical_fano: alphabet size must be >= 2");
  }
  if (!(error_probability >= 0.0 && error_probability <= 1.0)) {
    throw Error(ErrorCode::ParamOutOfRange, "classical_fano: error probability outside [0, 1]");
  }
  const double n = alphabet_size;
  ClassicalFanoReport r;
  r.strong_bound = binary_entropy(error_probability) + error_probability * std::log2(n - 1.0);
  r.weak_bound = 1.0 + error_probability * std::log2(n);
  r.strong_holds = r.strong_bound >= conditional_entropy_x_given_y - kBoundSlack;
  r.weak_holds = r.weak_bound >= conditional_entropy_x_given_y - kBoundSlack;
  return r;
}

FanoReport quantum_fano(const DensityMatrix& rho, const KrausChannel& channel, double tol) {
  FanoReport r;
  r.entanglement_fidelity = entanglement_fidelity(rho, channel, tol);
  r.entropy_exchange = entropy_exchange(rho, channel, tol);
  r.dim = rho.dim();
  const double d = static_cast<double>(r.dim);
  const double miss = 1.0 - r.entanglement_fidelity;
  r.strong_bound = binary_entropy(r.entanglement_fidelity) + miss * std::log2(d * d - 1.0);
  r.weak_bound = 1.0 + 2.0 * miss * std::log2(d);
  r.strong_holds = r.strong_bound >= r.entropy_exchange - kBoundSlack;
  r.weak_holds = r.weak_bound >= r.entropy_exchange - kBoundSlack;
  return r;
}

ComplexMatrix environment_state(const UnitaryDilation& dilation, const DensityMatrix& rho) {
  const Index d = dilation.dim_q();
  const Index m = dilation.dim_e();
  if (rho.dim() != d) {
    throw Error(ErrorCode::DimensionMismatch, "environment_state: state dimension");
  }
  // U(ρ ⊗ |0⟩⟨0|)U† only involves the columns k * m of U.
  ComplexMatrix isometry(d * m, d);
  for (Index k = 0; k < d; ++k) isometry.col(k) = dilation.unitary().col(k * m);
  const ComplexMatrix joint = isometry * rho.matrix() * isometry.adjoint();
  return partial_trace(joint, d, m, Keep::second);
}

EavesdropReport eavesdrop_bound(const PureEnsemble& ensemble, const KrausChannel& channel,
                                double tol) {
  require_dims(channel, ensemble.dim(), "eavesdrop_bound");
  const UnitaryDilation dilation = dilation_from_kraus(channel, tol);
  const Index m = dilation.dim_e();

  EavesdropReport r;
  ComplexMatrix average = ComplexMatrix::Zero(m, m);
  double mean_env_entropy = 0.0;
  double mean_exchange = 0.0;
  for (std::size_t k = 0; k < ensemble.size(); ++k) {
    const double p = ensemble.probs()[k];
    const DensityMatrix prep = ensemble.states()[k].density();
    const ComplexMatrix env = environment_state(dilation, prep);
    average += p * env;
    mean_env_entropy += p * von_neumann_entropy(env);
    const double exchange = entropy_exchange(prep, channel, tol);
    r.per_preparation.push_back(exchange);
    mean_exchange += p * exchange;
  }
  r.holevo_chi = von_neumann_entropy(average) - mean_env_entropy;
  r.entropy_exchange = entropy_exchange(density_from_ensemble(ensemble), channel, tol);
  r.bound = r.entropy_exchange - mean_exchange;
  return r;
}

JointDistribution simulate_eve_measurement(const PureEnsemble& ensemble,
                                           const KrausChannel& channel,
                                           const ComplexMatrix& basis_e, double tol) {
  require_dims(channel, ensemble.dim(), "simulate_eve_measurement");
  const UnitaryDilation dilation = dilation_from_kraus(channel, tol);
  const Index m = dilation.dim_e();
  if (basis_e.rows() != m || basis_e.cols() != m) {
    throw Error(ErrorCode::DimensionMismatch,
                "simulate_eve_measurement: environment basis must be " + std::to_string(m) + "x" +
                    std::to_string(m));
  }
  if (unitarity_defect(basis_e) > kDefaultTol) {
    throw Error(ErrorCode::NotUnitaryMatrix, "simulate_eve_measurement: basis is not unitary");
  }
  Eigen::MatrixXd table(static_cast<Index>(ensemble.size()), m);
  for (std::size_t k = 0; k < ensemble.size(); ++k) {
    const ComplexMatrix env = environment_state(dilation, ensemble.states()[k].density());
    for (Index j = 0; j < m; ++j) {
      const double overlap = (basis_e.col(j).adjoint() * env * basis_e.col(j))(0, 0).real();
      table(static_cast<Index>(k), j) = ensemble.probs()[k] * std::max(overlap, 0.0);
    }
  }
  return JointDistribution(std::move(table));
}

}  // namespace qchan
