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
#include "zeno/experiments.hpp"
#include "zeno/gkls.hpp"
#include "zeno/models.hpp"
#include "zeno/zeno.hpp"

using namespace zeno;
using oracle::dist;

namespace {

ComplexMatrix skew(const ComplexMatrix& h) { return -kI * commutator(h); }

ComplexMatrix diag(std::initializer_list<double> v) {
  ComplexMatrix m = ComplexMatrix::Zero(Eigen::Index(v.size()), Eigen::Index(v.size()));
  Eigen::Index i = 0;
  for (double x : v) m(i, i) = x, ++i;
  return m;
}

ZenoSplit three_level_split(double g = 1.0, double gamma = 2.0) {
  const auto gen = three_level_generators(figure_params(g, gamma));
  return zeno_split(gen.D_super.mat, gen.L_super.mat);
}

}  // namespace

TEST_CASE("zeno_split: Hamiltonian pair reduces to the Zeno Hamiltonian") {
  const ComplexMatrix k = diag({0.0, 0.0, 1.0});
  const ComplexMatrix h = oracle::random_hermitian(3, 1);
  const auto split = zeno_split(skew(k), skew(h));
  CHECK(dist(split.C_Z, skew(hamiltonian_zeno(k, h))) < 1e-8);
  for (std::uint64_t s = 0; s < 6; ++s) {
    const Eigen::Index d = 2 + Eigen::Index(s % 3);
    const ComplexMatrix kk = oracle::random_hermitian(d, 10 + s);
    const ComplexMatrix hh = oracle::random_hermitian(d, 20 + s);
    CHECK(dist(zeno_split(skew(kk), skew(hh)).C_Z, skew(hamiltonian_zeno(kk, hh))) < 1e-8);
  }
}

TEST_CASE("zeno_split: unique peripheral eigenvalue gives P C P") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto strong = liouvillian(random_gkls(2 + Eigen::Index(s % 3), 2, 30 + s)).mat;
    const auto weak = liouvillian(random_gkls(2 + Eigen::Index(s % 3), 1, 40 + s)).mat;
    const auto split = zeno_split(strong, weak);
    REQUIRE(split.decB.peripheral_indices().size() == 1);
    CHECK(dist(split.C_Z, split.P_phi * weak * split.P_phi) < 1e-10);
  }
}

TEST_CASE("zeno_split: three-level model matches the closed form") {
  const auto p = random_three_level_params(3);
  const auto gen = three_level_generators(p);
  CHECK(dist(zeno_split(gen.D_super.mat, gen.L_super.mat).C_Z, three_level_zeno_generator(p).mat) < 1e-8);
}

TEST_CASE("zeno_split: precondition violations") {
  CHECK_THROWS_AS(zeno_split(diag({1.0, -1.0}), diag({0.0, 1.0})), SpectrumViolation);
  ComplexMatrix jordan = ComplexMatrix::Zero(2, 2);
  jordan(0, 1) = 1.0;
  CHECK_THROWS_AS(zeno_split(jordan, diag({0.0, 1.0})), SemisimplicityViolation);
  CHECK_THROWS_AS(zeno_split(diag({0.0, -1.0}), diag({0.0, 1.0, 2.0})), DimensionError);
}

TEST_CASE("zeno_split: type invariants") {
  for (std::uint64_t s = 0; s < 6; ++s) {
    const auto strong = liouvillian(random_gkls(2 + Eigen::Index(s % 3), int(s % 3), 50 + s)).mat;
    const auto weak = liouvillian(random_gkls(2 + Eigen::Index(s % 3), 2, 60 + s)).mat;
    const auto sp = zeno_split(strong, weak);
    CHECK(dist(sp.P_phi * sp.C_Z, sp.C_Z) < 1e-10);
    CHECK(dist(sp.C_Z * sp.P_phi, sp.C_Z) < 1e-10);
    CHECK(dist(sp.P_phi * sp.C_Z * sp.P_phi, sp.C_Z) < 1e-10);
    CHECK(spectral_norm(ComplexMatrix((sp.C_Z * strong - strong * sp.C_Z) * sp.P_phi)) <=
          1e-8 * spectral_norm(strong) * spectral_norm(weak));
    CHECK(sp.resolvents.size() == sp.decB.peripheral_indices().size());
  }
}

TEST_CASE("adiabatic_error: trivial cases") {
  const auto gen = three_level_generators(figure_params(1.0, 2.0));
  const auto zero = zeno_split(gen.D_super.mat, ComplexMatrix::Zero(9, 9));
  for (double g : {1.0, 100.0})
    for (double t : {0.0, 0.5, 2.0}) CHECK(adiabatic_error(zero, g, t, ErrorVariant::plain) < 1e-12);
  const auto sp = three_level_split();
  CHECK(adiabatic_error(sp, 50.0, 0.0, ErrorVariant::plain) < 1e-15);
}

TEST_CASE("adiabatic_error: agrees with a Taylor propagator oracle") {
  const auto sp = three_level_split();
  const double gamma = 100.0, t = 1.0;
  const ComplexMatrix exact = oracle::taylor_expm(ComplexMatrix(gamma * sp.B + sp.C), t);
  const ComplexMatrix approx = oracle::taylor_expm(sp.B, gamma * t) * oracle::taylor_expm(sp.C_Z, t);
  CHECK(std::abs(adiabatic_error(sp, gamma, t, ErrorVariant::plain) - oracle::power_norm(exact - approx)) < 1e-8);
  CHECK(std::abs(adiabatic_error(sp, gamma, t, ErrorVariant::peripheral) -
                 oracle::power_norm(exact - approx * sp.P_phi)) < 1e-8);
}

TEST_CASE("bounds: vanish without resolvent or decay contributions") {
  BoundInputs in;
  in.M = in.M_cptp = 2.0;
  in.normC = 1.0;
  in.normCZ = 0.5;
  in.eta = 1.0;
  CHECK(bound_adiabatic(in, 10.0, 1.0) == 0.0);
  CHECK(bound_cptp(in, 10.0, 1.0) == 0.0);
}

TEST_CASE("bound_adiabatic: difference quotient and its limit") {
  BoundInputs in;
  in.M = 2.0;
  in.normC = 1.0;
  in.resolvent_sum = 1.0;
  const double t = 0.8;
  auto quotient = [&](double a, double b) { return (a * std::exp(t * a) - b * std::exp(t * b)) / (a - b); };
  in.normCZ = 0.5;
  CHECK(bound_adiabatic(in, 1.0, t) == doctest::Approx(3.0 * quotient(2.0, 0.5)).epsilon(1e-13));
  in.normCZ = 2.0;
  const double limit = bound_adiabatic(in, 1.0, t);
  CHECK(limit == doctest::Approx(3.0 * std::exp(2.0 * t) * (1.0 + 2.0 * t)).epsilon(1e-13));
  for (double h : {1e-5, -1e-5}) {
    in.normCZ = 2.0 + h;
    CHECK(bound_adiabatic(in, 1.0, t) == doctest::Approx(limit).epsilon(1e-4));
  }
  in.normCZ = 2.0 + 1e-12;
  CHECK(std::isfinite(bound_adiabatic(in, 1.0, t)));
  CHECK(bound_adiabatic(in, 1.0, t) == doctest::Approx(limit).epsilon(1e-10));
}

TEST_CASE("decay integral and tail of a polynomial envelope") {
  BoundInputs in;
  in.eta = 0.5;
  in.p_coeffs = {1.0, 2.0};
  double quad = 0.0;
  const double h = 1e-3;
  for (int i = 0; i < 200000; ++i) {
    const double s0 = i * h, s1 = s0 + h;
    quad += 0.5 * h * (std::exp(-in.eta * s0) * (1 + 2 * s0) + std::exp(-in.eta * s1) * (1 + 2 * s1));
  }
  CHECK(decay_integral(in) == doctest::Approx(quad).epsilon(1e-6));
  CHECK(decay_integral(in) == doctest::Approx(10.0));
  CHECK(decay_tail(in, 10.0, 0.3) == doctest::Approx(std::exp(-1.5) * (1 + 6.0)));
  CHECK(decay_tail(in, 1e6, 100.0) == 0.0);
  in.eta = std::numeric_limits<double>::infinity();
  CHECK(decay_integral(in) == 0.0);
  CHECK(decay_tail(in, 10.0, 1.0) == 0.0);
}

TEST_CASE("bound_simplified: infinite gaps and one-dimensional input") {
  BoundInputs in;
  in.chi = 1.0;
  in.D = 3;
  in.normC = 1.0;
  CHECK(bound_simplified(in, 10.0, 1.0) == 0.0);

  BoundInputs one;
  one.chi = 1.0;
  one.D = 1;
  one.eta = 0.5;
  CHECK(bound_simplified(one, 10.0, 0.4) == doctest::Approx(std::exp(-2.0)));

  BoundInputs defective;
  CHECK(std::isinf(bound_simplified(defective, 10.0, 1.0)));
}

TEST_CASE("estimate_bound_inputs: M and the envelope bound the strong semigroup") {
  std::vector<ComplexMatrix> strongs;
  for (std::uint64_t s = 0; s < 4; ++s) strongs.push_back(liouvillian(random_gkls(2 + Eigen::Index(s % 3), 2, 70 + s)).mat);
  strongs.push_back(three_level_generators(figure_params(2.0, 2.0)).D_super.mat);
  ComplexMatrix jordan = ComplexMatrix::Zero(3, 3);
  jordan(1, 1) = jordan(2, 2) = -1.0;
  jordan(1, 2) = 3.0;
  strongs.push_back(jordan);
  for (const auto& b : strongs) {
    const auto sp = zeno_split(b, ComplexMatrix::Zero(b.rows(), b.cols()));
    const auto in = estimate_bound_inputs(sp, 2.0, 100.0);
    CHECK(in.M >= 1.0);
    const ComplexMatrix off = ComplexMatrix::Identity(b.rows(), b.cols()) - sp.P_phi;
    for (int i = 0; i <= 300; ++i) {
      const double s = 0.05 * i;
      const ComplexMatrix e = expm(b, s);
      CHECK(spectral_norm(e) <= in.M);
      double envelope = 0.0;
      for (std::size_t n = 0; n < in.p_coeffs.size(); ++n) envelope += in.p_coeffs[n] * std::pow(s, double(n));
      if (std::isfinite(in.eta)) {
        CHECK(spectral_norm(ComplexMatrix(e * off)) <= std::exp(-in.eta * s) * envelope + 1e-12);
      }
    }
  }
  const auto sp = zeno_split(jordan, ComplexMatrix::Zero(3, 3));
  CHECK_FALSE(estimate_bound_inputs(sp, 1.0, 1.0).chi.has_value());
}

TEST_CASE("bounds dominate the measured three-level error") {
  for (double g : {0.1, 1.0, 2.0}) {
    const auto sp = three_level_split(g, 2.0);
    const auto in = estimate_bound_inputs(sp, 2.0, 1000.0);
    for (double gamma : {10.0, 100.0, 1000.0}) {
      for (double t : {0.25, 1.0, 2.0}) {
        const double err = adiabatic_error(sp, gamma, t, ErrorVariant::peripheral);
        CHECK(err <= bound_adiabatic(in, gamma, t) + 1e-9);
        CHECK(err <= bound_cptp(in, gamma, t) + 1e-9);
        CHECK(err <= bound_simplified(in, gamma, t) + 1e-9);
      }
    }
  }
}

TEST_CASE("perturbed_semigroup_bound_check: examples") {
  const auto gen = three_level_generators(figure_params(1.0, 2.0));
  const std::vector<double> grid{0.0, 0.25, 0.5, 1.0, 2.0};
  CHECK(perturbed_semigroup_bound_check(gen.D_super.mat, ComplexMatrix::Zero(9, 9), 10.0, grid).ok);
  CHECK(perturbed_semigroup_bound_check(gen.D_super.mat, gen.L_super.mat, 10.0, grid).ok);
  const ComplexMatrix b = skew(oracle::random_hermitian(3, 80));
  const ComplexMatrix c = oracle::random_matrix(9, 9, 81);
  const auto r = perturbed_semigroup_bound_check(b, c, 30.0, grid, 1.0);
  CHECK(r.ok);
  CHECK(r.max_ratio <= 1.0);
}

TEST_CASE("convergence_slope: exact power laws and degenerate input") {
  std::vector<std::pair<double, double>> one, two;
  for (double g : {10.0, 30.0, 100.0, 300.0, 1000.0}) {
    one.emplace_back(g, 3.0 / g);
    two.emplace_back(g, 3.0 / (g * g));
  }
  CHECK(std::abs(convergence_slope(one).slope + 1.0) < 1e-12);
  CHECK(std::abs(convergence_slope(two).slope + 2.0) < 1e-12);
  CHECK(convergence_slope(one).intercept == doctest::Approx(std::log(3.0)));
  CHECK(convergence_slope(one).residual < 1e-12);
  CHECK(std::abs(convergence_slope_top_half(one).slope + 1.0) < 1e-12);

  auto bad = one;
  bad[2].second = 0.0;
  CHECK_THROWS_AS(convergence_slope(bad), DegenerateData);
  CHECK_THROWS_AS(convergence_slope({{10, 1}, {20, 1}, {30, 1}, {40, 1}}), DegenerateData);
  CHECK_THROWS_AS(convergence_slope({{10, 1}, {1000, 1}, {100, 1}}), DegenerateData);
}

TEST_CASE("property: three-level convergence rate is first order") {
  const auto sp = three_level_split(1.0, 2.0);
  const auto times = mixed_time_grid(0.25, 2.0, 16);
  std::vector<std::pair<double, double>> sup;
  for (double gamma : {10.0, 30.0, 100.0, 300.0, 1000.0}) {
    double worst = 0.0;
    for (double t : times) worst = std::max(worst, adiabatic_error(sp, gamma, t, ErrorVariant::peripheral));
    sup.emplace_back(gamma, worst);
  }
  const double slope = convergence_slope_top_half(sup).slope;
  CHECK(slope >= -1.15);
  CHECK(slope <= -0.85);
  const double k = sup.back().first * sup.back().second;
  CHECK(sup[3].second <= 1.5 * k / sup[3].first);
}

TEST_CASE("property: both factor orderings agree on the peripheral subspace") {
  const auto sp = three_level_split(2.0, 2.0);
  for (double gamma : {10.0, 100.0})
    for (double t : {0.5, 1.5}) {
      const ComplexMatrix a = expm(sp.B, t * gamma), z = expm(sp.C_Z, t);
      CHECK(spectral_norm(ComplexMatrix((a * z - z * a) * sp.P_phi)) < 1e-8);
    }
}

TEST_CASE("property: Hamiltonian strong part yields a GKLS Zeno generator") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Eigen::Index d = 2 + Eigen::Index(s % 3);
    const auto strong = liouvillian(random_gkls(d, 0, 90 + s)).mat;
    const auto weak = liouvillian(random_gkls(d, 1 + int(s % 3), 100 + s)).mat;
    CHECK(gkls_form_check({d, zeno_split(strong, weak).C_Z, Provenance::projected}).ok());
  }
}

TEST_CASE("property: the limiting evolution of a GKLS pair is CPTP") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Eigen::Index d = 2 + Eigen::Index(s % 3);
    const auto strong = liouvillian(random_gkls(d, int(s % 4), 90 + s)).mat;
    const auto weak = liouvillian(random_gkls(d, 1 + int(s % 3), 100 + s)).mat;
    const auto sp = zeno_split(strong, weak);
    for (double t : {0.3, 1.0, 3.0}) {
      CHECK(cptp_check({d, ComplexMatrix(expm(sp.C_Z, t) * sp.P_phi), Provenance::propagator}).ok());
      CHECK(cptp_check({d, ComplexMatrix(expm(strong, 10.0 * t) * expm(sp.C_Z, t) * sp.P_phi),
                        Provenance::propagator}).ok());
    }
  }
}

TEST_CASE("the dissipative three-level Zeno generator is GKLS only on its range") {
  const auto sp = three_level_split(1.0, 2.0);
  CHECK_FALSE(gkls_form_check({3, sp.C_Z, Provenance::projected}).ok());
  CHECK(cptp_check({3, ComplexMatrix(expm(sp.C_Z, 1.0) * sp.P_phi), Provenance::propagator}).ok());
}

TEST_CASE("pulsed_zeno_product: commuting generator, rate and t = 0") {
  const ComplexMatrix p0 = diag({1.0, 0.0}), p1 = diag({0.0, 1.0});
  const ComplexMatrix measure = sandwich(p0, p0) + sandwich(p1, p1);
  const ComplexMatrix commuting = skew(pauli_z()) + dissipator(pauli_z());
  for (int n : {1, 3, 10}) CHECK(pulsed_zeno_product(measure, commuting, 1.0, n).distance <= 1e-10);

  const auto l = liouvillian(random_gkls(2, 2, 110)).mat;
  const double d8 = pulsed_zeno_product(measure, l, 1.0, 8).distance;
  const double d16 = pulsed_zeno_product(measure, l, 1.0, 16).distance;
  const double d32 = pulsed_zeno_product(measure, l, 1.0, 32).distance;
  CHECK(d16 / d8 == doctest::Approx(0.5).epsilon(0.25));
  CHECK(d32 / d16 == doctest::Approx(0.5).epsilon(0.25));

  // Raw convention at t = 0: both sides reduce to P, no special casing.
  const auto at0 = pulsed_zeno_product(measure, l, 0.0, 4);
  CHECK(dist(at0.product, measure) < 1e-15);
  CHECK(dist(at0.limit, measure) < 1e-15);
  CHECK(at0.distance < 1e-15);

  CHECK_THROWS_AS(pulsed_zeno_product(ComplexMatrix(2.0 * measure), l, 1.0, 2), ValidationError);
}

TEST_CASE("hamiltonian_zeno: examples and properties") {
  CHECK(hamiltonian_zeno(pauli_z(), pauli_x()).norm() < 1e-15);
  CHECK(dist(hamiltonian_zeno(pauli_z(), ComplexMatrix(pauli_z() + pauli_x())), pauli_z()) < 1e-15);
  const ComplexMatrix h = oracle::random_hermitian(3, 5);
  CHECK(dist(hamiltonian_zeno(ComplexMatrix::Identity(3, 3), h), h) < 1e-14);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const ComplexMatrix k = oracle::random_hermitian(4, 120 + s), hh = oracle::random_hermitian(4, 130 + s);
    const ComplexMatrix hz = hamiltonian_zeno(k, hh);
    CHECK(dist(hz, hz.adjoint()) < 1e-14);
    CHECK(spectral_norm(ComplexMatrix(hz * k - k * hz)) < 1e-10);
  }
}

TEST_CASE("commutator_projections: two and three levels") {
  const ComplexMatrix p0 = diag({1.0, 0.0}), p1 = diag({0.0, 1.0});
  const auto two = commutator_projections(diag({0.0, 1.0}));
  REQUIRE(two.size() == 3);
  CHECK(two[0].omega == doctest::Approx(-1.0));
  CHECK(two[1].omega == doctest::Approx(0.0));
  CHECK(two[2].omega == doctest::Approx(1.0));
  CHECK(dist(two[1].projection, sandwich(p0, p0) + sandwich(p1, p1)) < 1e-12);

  const auto three = commutator_projections(diag({0.0, 1.0, 2.0}));
  REQUIRE(three.size() == 5);
  CHECK(three[3].omega == doctest::Approx(1.0));
  CHECK(std::abs(three[3].projection.trace() - 2.0) < 1e-12);

  for (std::uint64_t s = 0; s < 5; ++s) {
    const Eigen::Index d = 2 + Eigen::Index(s % 3);
    ComplexMatrix sum = ComplexMatrix::Zero(d * d, d * d);
    for (const auto& bp : commutator_projections(oracle::random_hermitian(d, 140 + s))) sum += bp.projection;
    CHECK(dist(sum, ComplexMatrix::Identity(d * d, d * d)) < 1e-8);
  }
}
