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

#include "zeno/models.hpp"

#include <cmath>
#include <random>

#include "zeno/errors.hpp"

namespace zeno {
namespace {

ComplexMatrix ket_bra(Eigen::Index d, Eigen::Index i, Eigen::Index j) {
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}

// Pauli operators on levels 0, 1 of a qutrit.
struct QutritPaulis {
  ComplexMatrix P, X, Y, Z, two;
};

QutritPaulis qutrit_paulis() {
  QutritPaulis q;
  q.P = ket_bra(3, 0, 0) + ket_bra(3, 1, 1);
  q.X = ket_bra(3, 0, 1) + ket_bra(3, 1, 0);
  q.Y = -kI * (ket_bra(3, 0, 1) - ket_bra(3, 1, 0));
  q.Z = ket_bra(3, 0, 0) - ket_bra(3, 1, 1);
  q.two = ket_bra(3, 2, 2);
  return q;
}

double lorentz(const ThreeLevelParams& p) { return p.kappa / (p.kappa * p.kappa + 4.0 * p.g * p.g); }

Superoperator make(Eigen::Index d, ComplexMatrix mat, Provenance prov) {
  return Superoperator{d, std::move(mat), prov};
}

}  // namespace

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

void ThreeLevelParams::validate() const {
  for (double v : {Omega0, Omega1, Omega2, Gamma, g, omega2, kappa}) {
    if (!std::isfinite(v)) throw ValidationError("three-level parameters must be finite");
  }
  if (!(kappa > 0.0)) throw ValidationError("three-level parameters: kappa must be positive");
  if (!(g > 0.0)) throw ValidationError("three-level parameters: g must be positive");
  if (Gamma < 0.0) throw ValidationError("three-level parameters: Gamma must be nonnegative");
}

ThreeLevelParams figure_params(double g, double Gamma) {
  ThreeLevelParams p;
  p.Omega0 = 0.0;
  p.Omega1 = 1.0;
  p.Omega2 = 2.0;
  p.omega2 = 1.0;
  p.kappa = 1.0;
  p.g = g;
  p.Gamma = Gamma;
  return p;
}

ThreeLevelParams random_three_level_params(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> freq(-2.0, 2.0), rate(0.2, 3.0), deph(0.0, 3.0);
  ThreeLevelParams p;
  p.Omega0 = freq(rng);
  p.Omega1 = freq(rng);
  p.Omega2 = freq(rng);
  p.omega2 = freq(rng);
  p.Gamma = deph(rng);
  p.g = rate(rng);
  p.kappa = rate(rng);
  return p;
}

ThreeLevelGenerators three_level_generators(const ThreeLevelParams& p) {
  p.validate();
  ThreeLevelGenerators out;
  ComplexMatrix k = ComplexMatrix::Zero(3, 3);
  k.diagonal() << p.Omega0, p.Omega1, p.Omega2;
  out.weak_system = {3, k, {std::sqrt(p.Gamma) * (ket_bra(3, 1, 1) + ket_bra(3, 2, 2))}};

  ComplexMatrix h = p.g * (ket_bra(3, 0, 1) + ket_bra(3, 1, 0)) + p.omega2 * ket_bra(3, 2, 2);
  out.strong_system = {3, h, {std::sqrt(p.kappa) * ket_bra(3, 1, 2)}};

  out.L_super = liouvillian(out.weak_system);
  out.D_super = liouvillian(out.strong_system);
  return out;
}

Superoperator three_level_analytic_propagator(const ThreeLevelParams& p, double t) {
  p.validate();
  const auto q = qutrit_paulis();
  const double c = lorentz(p);
  const double k = p.kappa, g = p.g;
  const double decay = std::exp(-k * t);
  const double cs = std::cos(2 * g * t), sn = std::sin(2 * g * t);

  ComplexMatrix h = p.g * q.X + p.omega2 * q.two;
  const ComplexMatrix u = expm(ComplexMatrix(-kI * h), t);

  const ComplexMatrix a = q.P + std::exp(-k * t / 2) * q.two;
  const ComplexMatrix relax = 0.5 * ((1.0 - decay) * q.P -
                                     c * (2 * g - decay * (2 * g * cs + k * sn)) * q.Y -
                                     c * (k - decay * (k * cs - 2 * g * sn)) * q.Z);
  const ComplexMatrix inner = sandwich(a, a) + trace_map(relax, q.two);
  return make(3, sandwich(u, u.adjoint()) * inner, Provenance::propagator);
}

ThreeLevelPeripheral three_level_peripheral(const ThreeLevelParams& p) {
  p.validate();
  const auto q = qutrit_paulis();
  const double c = lorentz(p);
  const double k = p.kappa, g = p.g;

  ComplexVector plus = ComplexVector::Zero(3), minus = ComplexVector::Zero(3);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0;
  minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0;
  const ComplexMatrix pp = plus * plus.adjoint(), mm = minus * minus.adjoint();
  const ComplexMatrix pm = plus * minus.adjoint(), mp = minus * plus.adjoint();

  ThreeLevelPeripheral out;
  out.P_phi = make(3, sandwich(q.P, q.P) + trace_map(0.5 * (q.P - c * (2 * g * q.Y + k * q.Z)), q.two),
                   Provenance::projected);
  out.P_0 = make(3, 0.5 * (trace_map(q.P, ComplexMatrix::Identity(3, 3)) + trace_map(q.X, q.X)),
                 Provenance::projected);
  // |±⟩(⟨±|•|∓⟩ - ½ c (κ ± 2ig) ⟨2|•|2⟩)⟨∓|
  out.P_plus = make(3, sandwich(pp, mm) - 0.5 * c * Complex(k, 2 * g) * trace_map(pm, q.two),
                    Provenance::projected);
  out.P_minus = make(3, sandwich(mm, pp) - 0.5 * c * Complex(k, -2 * g) * trace_map(mp, q.two),
                     Provenance::projected);
  out.alpha_0 = 0.0;
  out.alpha_plus = Complex(0.0, -2 * g);
  out.alpha_minus = Complex(0.0, 2 * g);
  return out;
}

Superoperator three_level_zeno_generator(const ThreeLevelParams& p) {
  p.validate();
  const auto q = qutrit_paulis();
  const double c = lorentz(p);
  const ComplexMatrix inner = 2.0 * trace_map(q.X, q.X) + trace_map(q.Y, q.Y) +
                              trace_map(q.Z, q.Z) -
                              c * trace_map(ComplexMatrix(p.kappa * q.Z + 2 * p.g * q.Y), q.two);
  return make(3, -p.Gamma / 8.0 * inner, Provenance::projected);
}

DephasingQubit dephasing_qubit_example(double Omega, double kappa) {
  DephasingQubit out;
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(0, 0) = Omega;
  ComplexVector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  out.system = {2, h, {std::sqrt(kappa) * plus * plus.adjoint()}};
  // The generator being projected is the dissipator alone.
  out.L_super = make(2, dissipator(out.system.jumps[0]), Provenance::dissipator);
  const ComplexMatrix zeno = kappa / 8.0 * (dissipator(pauli_x()) + dissipator(pauli_y()));
  out.expected_zeno = make(2, zeno, Provenance::projected);
  out.expected_nonGKLS =
      make(2, zeno - kappa / 8.0 * dissipator(pauli_z()), Provenance::projected);
  return out;
}

GklsSystem random_gkls(Eigen::Index d, int n_jumps, std::uint64_t seed) {
  if (d < 2 || d > 4) throw ValidationError("random_gkls: d must lie in [2, 4]");
  if (n_jumps < 0 || n_jumps > 3) throw ValidationError("random_gkls: n_jumps must lie in [0, 3]");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  auto gaussian = [&] {
    ComplexMatrix m(d, d);
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index i = 0; i < d; ++i) m(i, j) = Complex(normal(rng), normal(rng));
    return m;
  };
  GklsSystem sys;
  sys.d = d;
  sys.hamiltonian = hermitian_part(gaussian());
  for (int i = 0; i < n_jumps; ++i) {
    ComplexMatrix l = gaussian();
    l -= (l.trace() / double(d)) * ComplexMatrix::Identity(d, d);
    sys.jumps.push_back(std::move(l));
  }
  const double s = spectral_norm(liouvillian(sys).mat);
  if (s > 0.0) {
    sys.hamiltonian /= s;
    for (auto& l : sys.jumps) l /= std::sqrt(s);
  }
  return sys;
}

}  // namespace zeno
