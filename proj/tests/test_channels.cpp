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

#include "doctest.h"
#include "qchan/channels.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace qchan;
using namespace qchan::testing;

namespace {

const double kRoot2 = std::sqrt(2.0);

KrausChannel identity_channel(Index d) { return KrausChannel({ComplexMatrix::Identity(d, d)}); }

double choi_distance(const KrausChannel& a, const KrausChannel& b) {
  return max_abs(choi_direct(a.operators()) - choi_direct(b.operators()));
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ValidationError;
}

}  // namespace

TEST_CASE("validate_kraus") {
  const ValidationReport ok = validate_kraus(identity_channel(2));
  CHECK(ok.passed);
  CHECK(ok.completeness_defect == 0.0);
  const ValidationReport bad = validate_kraus(KrausChannel({ComplexMatrix::Identity(2, 2) / 2.0}));
  CHECK_FALSE(bad.passed);
  CHECK(bad.completeness_defect == doctest::Approx(0.75));
  CHECK(validate_kraus(depolarizing(0.5)).passed);
  CHECK(code_of([] { require_valid(KrausChannel({ComplexMatrix::Identity(2, 2) / 2.0})); }) ==
        ErrorCode::InvalidChannel);
  CHECK(code_of([] {
          KrausChannel({ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)});
        }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("standard channels pass validation tightly") {
  for (double p : {0.0, 0.3, 1.0}) CHECK(validate_kraus(depolarizing(p), 1e-12).passed);
  for (double g : {0.0, 0.25, 1.0}) CHECK(validate_kraus(amplitude_damping(g), 1e-12).passed);
  for (Index d : {2, 3, 5}) CHECK(validate_kraus(dephasing(d), 1e-12).passed);
  CHECK(validate_kraus(unitary_channel(pauli_y()), 1e-12).passed);
  CHECK(code_of([] { depolarizing(1.5); }) == ErrorCode::ParamOutOfRange);
  CHECK(code_of([] { amplitude_damping(-0.1); }) == ErrorCode::ParamOutOfRange);
  CHECK(code_of([] { dephasing(1); }) == ErrorCode::ParamOutOfRange);
  CHECK(code_of([] { unitary_channel(matrix2(1, 1, 0, 1)); }) == ErrorCode::ParamOutOfRange);
  CHECK(code_of([] { make_standard_channel({"bitflip", 2, {}, std::nullopt}); }) ==
        ErrorCode::UnknownChannelName);
  CHECK(make_standard_channel({"depolarizing", 2, {{"p", 0.5}}, std::nullopt}).size() == 4);
  CHECK(make_standard_channel({"dephasing", 3, {}, std::nullopt}).size() == 3);
  CHECK(make_standard_channel({"unitary", 2, {}, pauli_x()}).size() == 1);
}

TEST_CASE("apply") {
  const DensityMatrix plus = DensityMatrix::from_matrix(matrix2(0.5, 0.5, 0.5, 0.5));
  SUBCASE("identity") {
    Rng rng(31);
    const DensityMatrix rho = random_density(3, rng);
    CHECK(max_abs(apply(identity_channel(3), rho).matrix() - rho.matrix()) < 1e-15);
  }
  SUBCASE("dephasing destroys coherences") {
    CHECK(max_abs(apply(dephasing(2), plus).matrix() - diag({0.5, 0.5})) < 1e-15);
  }
  SUBCASE("fully depolarizing") {
    CHECK(max_abs(apply(depolarizing(1.0), DensityMatrix::from_matrix(diag({1.0, 0.0}))).matrix() -
                  diag({0.5, 0.5})) < 1e-15);
  }
  SUBCASE("depolarizing(0) acts as the identity") {
    CHECK(max_abs(apply(depolarizing(0.0), plus).matrix() - plus.matrix()) < 1e-15);
  }
  SUBCASE("amplitude_damping(1) resets to |0⟩") {
    Rng rng(32);
    for (int trial = 0; trial < 10; ++trial) {
      CHECK(max_abs(apply(amplitude_damping(1.0), random_density(2, rng)).matrix() -
                    diag({1.0, 0.0})) < 1e-15);
    }
  }
  SUBCASE("errors") {
    CHECK(code_of([&] { apply(dephasing(3), plus); }) == ErrorCode::DimensionMismatch);
    CHECK(code_of([&] { apply(KrausChannel({ComplexMatrix::Identity(2, 2) / 2.0}), plus); }) ==
          ErrorCode::InvalidChannel);
  }
  SUBCASE("trace preserving and linear") {
    Rng rng(33);
    for (int trial = 0; trial < 50; ++trial) {
      const Index d = uniform_index(1, 4, rng);
      const KrausChannel c = random_channel(d, uniform_index(1, d * d, rng), rng);
      const DensityMatrix r1 = random_density(d, rng);
      const DensityMatrix r2 = random_density(d, rng);
      const double alpha = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      CHECK(std::abs(apply(c, r1).matrix().trace().real() - 1.0) <= 1e-10);
      const DensityMatrix mixed =
          DensityMatrix::from_matrix(alpha * r1.matrix() + (1 - alpha) * r2.matrix());
      CHECK(max_abs(apply(c, mixed).matrix() - alpha * apply(c, r1).matrix() -
                    (1 - alpha) * apply(c, r2).matrix()) <= 1e-10);
    }
  }
}

TEST_CASE("apply_extended") {
  Rng rng(34);
  SUBCASE("identity leaves the input unchanged") {
    const DensityMatrix rho = random_density(6, rng);
    CHECK(max_abs(apply_extended(identity_channel(3), rho, 2).matrix() - rho.matrix()) < 1e-15);
  }
  SUBCASE("product input factorizes") {
    const DensityMatrix r = random_density(2, rng);
    const DensityMatrix q = random_density(3, rng);
    const KrausChannel c = random_channel(3, 4, rng);
    const DensityMatrix out =
        apply_extended(c, DensityMatrix::from_matrix(tensor(r.matrix(), q.matrix())), 2);
    CHECK(max_abs(out.matrix() - tensor(r.matrix(), apply(c, q).matrix())) <= 1e-12);
  }
  SUBCASE("dephasing on a maximally entangled pair") {
    const ComplexVector phi = vec({1 / kRoot2, 0, 0, 1 / kRoot2});
    const DensityMatrix bell = DensityMatrix::from_matrix(phi * phi.adjoint());
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(0, 0) = expected(3, 3) = 0.5;
    CHECK(max_abs(apply_extended(dephasing(2), bell, 2).matrix() - expected) < 1e-15);
  }
  SUBCASE("reduced output matches apply") {
    for (int trial = 0; trial < 30; ++trial) {
      const Index dr = uniform_index(1, 3, rng);
      const Index d = uniform_index(1, 3, rng);
      const KrausChannel c = random_channel(d, uniform_index(1, d * d, rng), rng);
      const DensityMatrix rho = random_density(dr * d, rng);
      const ComplexMatrix lhs =
          partial_trace(apply_extended(c, rho, dr).matrix(), dr, d, Keep::second);
      const ComplexMatrix rhs =
          apply(c, DensityMatrix::from_matrix(partial_trace(rho.matrix(), dr, d, Keep::second)))
              .matrix();
      CHECK(max_abs(lhs - rhs) <= 1e-9);
    }
  }
  CHECK(code_of([&] { apply_extended(dephasing(2), random_density(5, rng), 2); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("choi") {
  SUBCASE("identity gives the unnormalized maximally entangled projector") {
    const ChoiMatrix d = choi(identity_channel(2));
    const ComplexVector tilde = vec({1, 0, 0, 1});
    CHECK(max_abs(d.matrix() - tilde * tilde.adjoint()) == 0.0);
    CHECK(d.matrix().trace().real() == doctest::Approx(2.0));
  }
  SUBCASE("fully depolarizing") {
    CHECK(max_abs(choi(depolarizing(1.0)).matrix() - ComplexMatrix::Identity(4, 4) / 2.0) < 1e-15);
  }
  SUBCASE("dephasing") { CHECK(max_abs(choi(dephasing(2)).matrix() - diag({1, 0, 0, 1})) == 0.0); }
  SUBCASE("matches the direct construction") {
    Rng rng(35);
    for (int trial = 0; trial < 30; ++trial) {
      const Index d = uniform_index(1, 4, rng);
      const KrausChannel c = random_channel(d, uniform_index(1, d * d, rng), rng);
      CHECK(max_abs(choi(c).matrix() - choi_direct(c.operators())) <= 1e-12);
    }
  }
  SUBCASE("invalid Choi matrices are rejected") {
    CHECK(code_of([] { ChoiMatrix(2, diag({1, 0, 0, 0})); }) == ErrorCode::InvalidChannel);
    CHECK(code_of([] { ChoiMatrix(2, diag({2, 1, 0, -1})); }) == ErrorCode::NotPSD);
    CHECK(code_of([] { ChoiMatrix(2, ComplexMatrix::Identity(3, 3)); }) ==
          ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("kraus_from_choi") {
  SUBCASE("identity") {
    const KrausChannel c = kraus_from_choi(choi(identity_channel(3)));
    REQUIRE(c.size() == 1);
    const ComplexMatrix a = c.operators()[0];
    const Complex phase = a(0, 0);
    CHECK(std::abs(std::abs(phase) - 1.0) < 1e-12);
    CHECK(max_abs(a - phase * ComplexMatrix::Identity(3, 3)) < 1e-12);
  }
  SUBCASE("fully depolarizing yields four orthogonal operators") {
    const KrausChannel c = kraus_from_choi(ChoiMatrix(2, ComplexMatrix::Identity(4, 4) / 2.0));
    REQUIRE(c.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        const Complex ip = (c.operators()[i].adjoint() * c.operators()[j]).trace();
        CHECK(std::abs(ip - (i == j ? 0.5 : 0.0)) < 1e-12);
      }
    }
    CHECK(max_abs(choi_direct(c.operators()) - ComplexMatrix::Identity(4, 4) / 2.0) <= 1e-12);
  }
  SUBCASE("non trace preserving Choi matrix") {
    CHECK(code_of([] { kraus_from_choi(ChoiMatrix(2, diag({1.5, 0, 0, 0.5}))); }) ==
          ErrorCode::TracePreservationViolated);
  }
  SUBCASE("round trips") {
    Rng rng(36);
    for (int trial = 0; trial < 50; ++trial) {
      const Index d = uniform_index(1, 4, rng);
      const KrausChannel c = random_channel(d, uniform_index(1, d * d, rng), rng);
      const KrausChannel back = kraus_from_choi(choi(c));
      CHECK(back.size() <= static_cast<std::size_t>(d * d));
      CHECK(choi_distance(c, back) <= 1e-8);
    }
  }
}

TEST_CASE("dilation_from_kraus and kraus_from_dilation") {
  SUBCASE("identity") {
    const UnitaryDilation u = dilation_from_kraus(identity_channel(2));
    CHECK(u.dim_e() == 1);
    CHECK(max_abs(u.unitary() - ComplexMatrix::Identity(2, 2)) == 0.0);
    CHECK(kraus_from_dilation(u).size() == 1);
  }
  SUBCASE("dephasing gives a controlled copy") {
    const UnitaryDilation u = dilation_from_kraus(dephasing(2));
    CHECK(u.dim_e() == 2);
    // |0⟩|0⟩ → |0⟩|0⟩ and |1⟩|0⟩ → |1⟩|1⟩ in Q-major order.
    CHECK(max_abs(u.unitary().col(0) - vec({1, 0, 0, 0})) == 0.0);
    CHECK(max_abs(u.unitary().col(2) - vec({0, 0, 0, 1})) == 0.0);
    CHECK(unitarity_defect(u.unitary()) <= 1e-12);
  }
  SUBCASE("SWAP resets the system to |0⟩") {
    ComplexMatrix swap = ComplexMatrix::Zero(4, 4);
    swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
    const KrausChannel c = kraus_from_dilation(UnitaryDilation(2, 2, swap));
    CHECK(c.completeness_defect() <= 1e-9);
    Rng rng(37);
    for (int trial = 0; trial < 10; ++trial) {
      CHECK(max_abs(apply(c, random_density(2, rng)).matrix() - diag({1, 0})) <= 1e-12);
    }
  }
  SUBCASE("round trips") {
    Rng rng(38);
    for (int trial = 0; trial < 50; ++trial) {
      const Index d = uniform_index(1, 4, rng);
      const Index m = uniform_index(1, d * d, rng);
      const KrausChannel c = random_channel(d, m, rng);
      const UnitaryDilation u = dilation_from_kraus(c);
      CHECK(u.dim_e() == m);
      CHECK(unitarity_defect(u.unitary()) <= 1e-9);
      const KrausChannel back = kraus_from_dilation(u);
      CHECK(back.completeness_defect() <= 1e-9);
      CHECK(choi_distance(c, back) <= 1e-8);
    }
  }
  SUBCASE("errors") {
    CHECK(code_of([] { UnitaryDilation(2, 2, ComplexMatrix::Identity(4, 4) * 2.0); }) ==
          ErrorCode::NotUnitary);
    CHECK(code_of([] {
            dilation_from_kraus(KrausChannel({ComplexMatrix::Identity(2, 2) / 2.0}));
          }) == ErrorCode::InvalidChannel);
  }
}

TEST_CASE("canonical_kraus") {
  const auto w_of = [](const KrausChannel& c, const DensityMatrix& rho) {
    const std::size_t m = c.size();
    ComplexMatrix w(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        w(i, j) = (c.operators()[i] * rho.matrix() * c.operators()[j].adjoint()).trace();
    return w;
  };
  SUBCASE("identity is unchanged") {
    const KrausChannel c = canonical_kraus(identity_channel(2), DensityMatrix::maximally_mixed(2));
    REQUIRE(c.size() == 1);
    CHECK(max_abs(c.operators()[0] - ComplexMatrix::Identity(2, 2)) < 1e-12);
  }
  SUBCASE("dephasing at I/2 has orthogonal operators") {
    const KrausChannel c = canonical_kraus(dephasing(2), DensityMatrix::maximally_mixed(2));
    REQUIRE(c.size() == 2);
    CHECK(std::abs((c.operators()[0].adjoint() * c.operators()[1]).trace()) < 1e-12);
    CHECK(choi_distance(c, dephasing(2)) <= 1e-8);
  }
  SUBCASE("redundant representation collapses") {
    const ComplexMatrix a = ComplexMatrix::Identity(2, 2) / kRoot2;
    const KrausChannel c = canonical_kraus(KrausChannel({a, a}), DensityMatrix::maximally_mixed(2));
    CHECK(c.size() == 1);
    CHECK(choi_distance(c, identity_channel(2)) <= 1e-8);
  }
  SUBCASE("random instances") {
    Rng rng(39);
    for (int trial = 0; trial < 50; ++trial) {
      const Index d = uniform_index(1, 4, rng);
      const KrausChannel c = random_channel(d, uniform_index(1, d * d + 2, rng), rng);
      const DensityMatrix rho = random_density(d, rng, uniform_index(1, d, rng));
      const KrausChannel b = canonical_kraus(c, rho);
      CHECK(b.size() <= static_cast<std::size_t>(d * d));
      const ComplexMatrix w = w_of(b, rho);
      const ComplexMatrix off = w - ComplexMatrix(w.diagonal().asDiagonal());
      CHECK(max_abs(off) <= 1e-8);
      CHECK(choi_distance(c, b) <= 1e-8);
    }
  }
}

TEST_CASE("same_channel and mix_kraus") {
  SUBCASE("self comparison") {
    const ChannelComparison cmp = same_channel(depolarizing(0.3), depolarizing(0.3));
    CHECK(cmp.same);
    CHECK(cmp.defect == 0.0);
  }
  SUBCASE("distinct unitaries") {
    CHECK_FALSE(same_channel(unitary_channel(pauli_x()), unitary_channel(pauli_z())).same);
  }
  SUBCASE("dimension mismatch") {
    CHECK(code_of([] { same_channel(dephasing(2), dephasing(3)); }) ==
          ErrorCode::DimensionMismatch);
  }
  SUBCASE("identity mixing") {
    const KrausChannel c = depolarizing(0.4);
    const KrausChannel mixed = mix_kraus(c, ComplexMatrix::Identity(4, 4));
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(max_abs(mixed.operators()[i] - c.operators()[i]) == 0.0);
  }
  SUBCASE("permutation reorders") {
    ComplexMatrix perm = ComplexMatrix::Zero(2, 2);
    perm(0, 1) = perm(1, 0) = 1.0;
    const KrausChannel mixed = mix_kraus(amplitude_damping(0.3), perm);
    CHECK(max_abs(mixed.operators()[0] - amplitude_damping(0.3).operators()[1]) == 0.0);
    CHECK(same_channel(mixed, amplitude_damping(0.3), 1e-9).same);
  }
  SUBCASE("random mixing with zero padding") {
    Rng rng(40);
    for (int trial = 0; trial < 50; ++trial) {
      const Index d = uniform_index(1, 4, rng);
      const Index m = uniform_index(1, d * d, rng);
      const Index padded = m + uniform_index(0, 3, rng);
      const KrausChannel c = trial == 0 ? dephasing(2) : random_channel(d, m, rng);
      const KrausChannel mixed =
          mix_kraus(c, random_unitary(padded < Index(c.size()) ? c.size() : padded, rng));
      CHECK(same_channel(c, mixed, 1e-9).same);
      CHECK(choi_distance(c, mixed) <= 1e-9);
    }
  }
  SUBCASE("errors") {
    CHECK(code_of([] { mix_kraus(depolarizing(0.2), ComplexMatrix::Identity(2, 2)); }) ==
          ErrorCode::DimensionMismatch);
    CHECK(code_of([] { mix_kraus(dephasing(2), matrix2(1, 1, 0, 1)); }) ==
          ErrorCode::NotUnitaryMatrix);
  }
}
