// Copyright 2026 The zeno-limits Authors
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

#include <doctest.h>

#include "oracles.hpp"
#include "zeno/errors.hpp"
#include "zeno/gkls.hpp"
#include "zeno/models.hpp"
#include "zeno/spectral.hpp"
#include "zeno/zeno.hpp"

using namespace zeno;
using oracle::dist;

namespace {

// Direct evaluation of the master equation right-hand side.
ComplexMatrix apply_generator(const GklsSystem& sys, const ComplexMatrix& rho) {
  ComplexMatrix out = -kI * (sys.hamiltonian * rho - rho * sys.hamiltonian);
  for (const auto& l : sys.jumps) {
    const ComplexMatrix ll = l.adjoint() * l;
    out += l * rho * l.adjoint() - 0.5 * (ll * rho + rho * ll);
  }
  return out;
}

// -d/dt tr ρ² at t = 0, written from the master equation.
double purity_rate_direct(const GklsSystem& sys, const ComplexMatrix& rho) {
  return -2.0 * (rho * apply_generator(sys, rho)).trace().real();
}

ComplexMatrix transpose_map(Eigen::Index d) {
  ComplexMatrix t = ComplexMatrix::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) t(j + i * d, i + j * d) = 1.0;
  return t;
}

}  // namespace

TEST_CASE("liouvillian: zero system") {
  GklsSystem sys{2, ComplexMatrix::Zero(2, 2), {}};
  CHECK(liouvillian(sys).mat.norm() == 0.0);
}

TEST_CASE("liouvillian: qubit Hamiltonian Z has Bohr frequencies 0, 0, -2i, 2i") {
  GklsSystem sys{2, pauli_z(), {}};
  const auto dec = decompose(liouvillian(sys).mat);
  REQUIRE(dec.clusters.size() == 3);
  std::vector<std::pair<double, Eigen::Index>> spectrum;
  for (const auto& c : dec.clusters) {
    CHECK(std::abs(c.eigenvalue.real()) < 1e-12);
    spectrum.emplace_back(c.eigenvalue.imag(), c.multiplicity);
  }
  std::sort(spectrum.begin(), spectrum.end());
  CHECK(spectrum[0].first == doctest::Approx(-2.0));
  CHECK(spectrum[1].first == doctest::Approx(0.0));
  CHECK(spectrum[1].second == 2);
  CHECK(spectrum[2].first == doctest::Approx(2.0));
}

TEST_CASE("liouvillian: matches the master equation on random states") {
  const auto gen = three_level_generators(random_three_level_params(5));
  for (std::uint64_t s = 0; s < 4; ++s) {
    const ComplexMatrix rho = oracle::random_matrix(3, 3, 40 + s);
    for (const auto* pair : {&gen.weak_system, &gen.strong_system}) {
      const auto sup = liouvillian(*pair);
      CHECK(dist(unvec(sup.mat * vec(rho), 3), apply_generator(*pair, rho)) < 1e-12);
    }
  }
  for (std::uint64_t s = 0; s < 6; ++s) {
    const auto sys = random_gkls(2 + Eigen::Index(s % 3), 3, 50 + s);
    const ComplexMatrix rho = oracle::random_matrix(sys.d, sys.d, 60 + s);
    CHECK(dist(unvec(liouvillian(sys).mat * vec(rho), sys.d), apply_generator(sys, rho)) < 1e-12);
  }
}

TEST_CASE("liouvillian: input validation") {
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(0, 1) = 1.0;
  CHECK_THROWS_AS(liouvillian(GklsSystem{2, h, {}}), ValidationError);
  CHECK_THROWS_AS(liouvillian(GklsSystem{2, pauli_x(), {ComplexMatrix::Zero(3, 3)}}), DimensionError);
  CHECK_THROWS_AS(liouvillian(GklsSystem{3, pauli_x(), {}}), DimensionError);
}

TEST_CASE("property: trace annihilation and hermiticity preservation") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto sys = random_gkls(2 + Eigen::Index(s % 3), int(s % 4), 70 + s);
    const auto l = liouvillian(sys);
    const ComplexVector one = vec(ComplexMatrix::Identity(sys.d, sys.d));
    CHECK((one.adjoint() * l.mat).norm() < 1e-10);
    const ComplexMatrix x = oracle::random_hermitian(sys.d, 90 + s);
    const ComplexMatrix y = unvec(l.mat * vec(x), sys.d);
    CHECK(dist(y, y.adjoint()) < 1e-10);
  }
}

TEST_CASE("canonicalize: removes traces and leaves the generator unchanged") {
  GklsSystem sys{2, pauli_z(), {ComplexMatrix(ComplexMatrix::Identity(2, 2) + pauli_x()),
                                ComplexMatrix(Complex(0.3, -0.7) * ComplexMatrix::Identity(2, 2))}};
  const auto canon = canonicalize(sys);
  CHECK(dist(canon.jumps[0], pauli_x()) < 1e-15);
  CHECK(canon.jumps[1].norm() < 1e-15);
  CHECK(dist(liouvillian(canon).mat, liouvillian(sys).mat) < 1e-10);
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto r = random_gkls(2 + Eigen::Index(s % 3), 2, 100 + s);
    for (auto& l : r.jumps) l += Complex(0.4 * s, -0.2) * ComplexMatrix::Identity(r.d, r.d);
    const auto c = canonicalize(r);
    for (const auto& l : c.jumps) CHECK(std::abs(l.trace()) < 1e-12);
    CHECK(dist(liouvillian(c).mat, liouvillian(r).mat) < 1e-10);
  }
}

TEST_CASE("cptp_check: identity map, transpose map and a GKLS propagator") {
  const auto id = cptp_check({2, ComplexMatrix::Identity(4, 4), Provenance::propagator});
  CHECK(id.ok());
  CHECK(std::abs(id.min_choi_eigenvalue) < 1e-12);

  const auto tr = cptp_check({2, transpose_map(2), Provenance::propagator});
  CHECK(tr.trace_preserving);
  CHECK(tr.hermiticity_preserving);
  CHECK_FALSE(tr.completely_positive);
  CHECK(tr.min_choi_eigenvalue == doctest::Approx(-1.0));

  const auto gen = three_level_generators(figure_params(1.0, 2.0));
  CHECK(cptp_check({3, expm(gen.L_super.mat, 1.0), Provenance::propagator}).ok());
  CHECK(cptp_check({3, expm(gen.D_super.mat, 1.0), Provenance::propagator}).ok());
}

TEST_CASE("choi: transpose map gives the swap") {
  const auto c = choi({2, transpose_map(2), Provenance::propagator});
  ComplexMatrix swap = ComplexMatrix::Zero(4, 4);
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) swap(i * 2 + j, j * 2 + i) = 1.0;
  CHECK(dist(c, swap) < 1e-15);
}

TEST_CASE("gkls_form_check: liouvillians and the dephasing example") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    CHECK(gkls_form_check(liouvillian(random_gkls(2 + Eigen::Index(s % 3), int(s % 4), 120 + s))).ok());
  }
  for (double kappa : {0.5, 1.0, 3.0}) {
    const auto ex = dephasing_qubit_example(1.0, kappa);
    CHECK(gkls_form_check(ex.expected_zeno).ok());
    const auto bad = gkls_form_check(ex.expected_nonGKLS);
    CHECK(bad.trace_annihilating);
    CHECK(bad.hermiticity_preserving);
    CHECK_FALSE(bad.conditionally_completely_positive);
    CHECK(bad.min_conditional_eigenvalue < -1e-3 * kappa);
  }
}

TEST_CASE("purity_objective: jump form, superoperator form and the master equation agree") {
  for (std::uint64_t s = 0; s < 8; ++s) {
    const auto sys = random_gkls(2 + Eigen::Index(s % 3), 1 + int(s % 3), 140 + s);
    ComplexMatrix v = oracle::random_matrix(sys.d, sys.d, 150 + s);
    ComplexMatrix rho = v * v.adjoint();
    rho /= rho.trace();
    const double direct = purity_rate_direct(sys, rho);
    CHECK(purity_objective(sys.jumps, rho) == doctest::Approx(direct).epsilon(1e-10));
    CHECK(purity_objective(liouvillian(sys), rho) == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("purity_decay_rate: no jumps gives zero") {
  GklsSystem sys{3, oracle::random_hermitian(3, 8), {}};
  CHECK(purity_decay_rate(sys).gamma == 0.0);
}

TEST_CASE("purity_decay_rate: single X jump against a Bloch-sphere grid") {
  const double kappa = 1.7;
  GklsSystem sys{2, ComplexMatrix::Zero(2, 2), {ComplexMatrix(std::sqrt(kappa) * pauli_x() / 2.0)}};
  const auto rate = purity_decay_rate(sys);
  const double grid = oracle::bloch_grid_max([&](const ComplexMatrix& r) { return purity_rate_direct(sys, r); });
  CHECK(rate.gamma >= grid - 1e-9);
  CHECK(rate.gamma == doctest::Approx(grid).epsilon(1e-4));

  GklsSystem zsys{2, pauli_x(), {ComplexMatrix(std::sqrt(kappa) * pauli_z() / 2.0)}};
  CHECK(purity_decay_rate(zsys).gamma == doctest::Approx(rate.gamma).epsilon(1e-8));
}

TEST_CASE("purity_decay_rate: random qubits against pure and mixed grids") {
  for (std::uint64_t s = 0; s < 4; ++s) {
    const auto sys = random_gkls(2, 1 + int(s % 3), 160 + s);
    const auto rate = purity_decay_rate(sys);
    auto f = [&](const ComplexMatrix& r) { return purity_rate_direct(sys, r); };
    const double pure = oracle::bloch_grid_max(f);
    const double ball = oracle::bloch_ball_max(f);
    CHECK(rate.gamma >= std::max(pure, ball) - 1e-9);
    CHECK(rate.gamma <= std::max(pure, ball) * (1 + 1e-3) + 1e-9);
    CHECK(rate.pure_max <= rate.gamma);
    CHECK(rate.mixed_max <= rate.gamma);
  }
}

TEST_CASE("purity_decay_rate: dominates random samples in higher dimension") {
  for (std::uint64_t s = 0; s < 3; ++s) {
    const auto sys = random_gkls(3 + Eigen::Index(s % 2), 2, 170 + s);
    const auto rate = purity_decay_rate(sys);
    double sampled = 0.0;
    for (std::uint64_t k = 0; k < 500; ++k) {
      const ComplexMatrix v = oracle::random_matrix(sys.d, 1 + Eigen::Index(k % sys.d), 180 + 1000 * s + k);
      ComplexMatrix rho = v * v.adjoint();
      rho /= rho.trace();
      sampled = std::max(sampled, purity_rate_direct(sys, rho));
    }
    CHECK(rate.gamma >= sampled - 1e-10);
  }
}

TEST_CASE("property: the Hamiltonian never enters the purity rate") {
  const auto sys = random_gkls(3, 2, 190);
  GklsSystem other = sys;
  other.hamiltonian = oracle::random_hermitian(3, 191);
  ComplexMatrix rho = oracle::random_hermitian(3, 192);
  rho = rho * rho;
  rho /= rho.trace();
  CHECK(purity_objective(sys.jumps, rho) == purity_objective(other.jumps, rho));
  CHECK(purity_decay_rate(sys).gamma == purity_decay_rate(other).gamma);
}

TEST_CASE("property: rate vanishes exactly when the canonical jumps vanish") {
  for (std::uint64_t s = 0; s < 8; ++s) {
    CHECK(purity_decay_rate(random_gkls(2 + Eigen::Index(s % 3), 1 + int(s % 3), 200 + s)).gamma > 1e-8);
  }
  GklsSystem zero{2, pauli_z(), {ComplexMatrix::Zero(2, 2)}};
  CHECK(purity_decay_rate(zero).gamma <= 1e-12);
  GklsSystem scalar{3, oracle::random_hermitian(3, 3), {ComplexMatrix(Complex(2, 1) * ComplexMatrix::Identity(3, 3))}};
  CHECK(purity_decay_rate(scalar).gamma <= 1e-12);
}

TEST_CASE("property: peripheral maps are CPTP for negative and positive times") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto sys = random_gkls(2 + Eigen::Index(s % 3), int(s % 4), 220 + s);
    const auto l = liouvillian(sys);
    const auto p = peripheral_projection(decompose(l.mat));
    for (double t : {-1.0, 0.5, 2.0}) {
      const ComplexMatrix map = expm(ComplexMatrix(l.mat * p), t) * p;
      CHECK(cptp_check({sys.d, map, Provenance::propagator}).ok());
    }
  }
}

TEST_CASE("no_go_check: unitary and dephasing examples") {
  GklsSystem unitary{2, pauli_z(), {}};
  const auto u = no_go_check(unitary, liouvillian(unitary));
  CHECK(u.gamma_original == 0.0);
  CHECK(u.gamma_projected == 0.0);
  CHECK(u.equal_within_tol);

  const auto ex = dephasing_qubit_example(1.0, 1.0);
  const auto r = no_go_check(ex.system, ex.expected_zeno);
  CHECK(r.equal_within_tol);
  CHECK(r.gamma_original == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("property: fast oscillations never increase the purity decay rate") {
  for (std::uint64_t s = 0; s < 6; ++s) {
    const auto sys = random_gkls(2, 1 + int(s % 3), 240 + s);
    const ComplexMatrix k = oracle::random_hermitian(2, 250 + s);
    const auto split = zeno_split(ComplexMatrix(-kI * commutator(k)), liouvillian(sys).mat);
    const Superoperator lz{2, split.C_Z, Provenance::projected};
    REQUIRE(gkls_form_check(lz).ok());
    const auto r = no_go_check(sys, lz);
    CHECK(r.gamma_projected > 0.0);
    CHECK(r.gamma_projected <= r.gamma_original + 1e-9);
    auto f = [&](const ComplexMatrix& rho) { return purity_objective(lz, rho); };
    CHECK(r.gamma_projected >= std::max(oracle::bloch_grid_max(f), oracle::bloch_ball_max(f)) - 1e-9);
  }
}
