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

#pragma once

#include <cstdint>

#include "zeno/core.hpp"
#include "zeno/gkls.hpp"

namespace zeno {

/// Three-level model: weak generator from K = diag(Ω0, Ω1, Ω2) with dephasing
/// jump √Γ (|1⟩⟨1| + |2⟩⟨2|); strong generator from H = g X_{01} + ω2 |2⟩⟨2|
/// with decay jump √κ |1⟩⟨2|.
struct ThreeLevelParams {
  double Omega0 = 0.0;
  double Omega1 = 1.0;
  double Omega2 = 2.0;
  double Gamma = 2.0;
  double g = 1.0;
  double omega2 = 1.0;
  double kappa = 1.0;

  void validate() const;
};

/// Ω = (0, 1, 2), ω2 = 1, κ = 1 with the given g and Γ.
ThreeLevelParams figure_params(double g, double Gamma);

/// Seeded draw with κ, g bounded away from zero.
ThreeLevelParams random_three_level_params(std::uint64_t seed);

struct ThreeLevelGenerators {
  GklsSystem weak_system;
  GklsSystem strong_system;
  Superoperator L_super;
  Superoperator D_super;
};

ThreeLevelGenerators three_level_generators(const ThreeLevelParams& p);

/// Closed-form e^{tD}.
Superoperator three_level_analytic_propagator(const ThreeLevelParams& p, double t);

struct ThreeLevelPeripheral {
  Superoperator P_phi, P_0, P_plus, P_minus;
  /// 0, -2ig, +2ig, matching P_0, P_plus, P_minus.
  Complex alpha_0, alpha_plus, alpha_minus;
};

ThreeLevelPeripheral three_level_peripheral(const ThreeLevelParams& p);

/// Closed-form Σ_k P_k L P_k.
Superoperator three_level_zeno_generator(const ThreeLevelParams& p);

struct DephasingQubit {
  GklsSystem system;  ///< H = Ω|0⟩⟨0|, jump √κ |+⟩⟨+|
  Superoperator L_super;
  Superoperator expected_zeno;     ///< (κ/8)(D[X] + D[Y])
  Superoperator expected_nonGKLS;  ///< expected_zeno - (κ/8) D[Z]
};

DephasingQubit dephasing_qubit_example(double Omega = 1.0, double kappa = 1.0);

/// Random Hermitian H and traceless Gaussian jumps, scaled so ‖L‖ = 1.
GklsSystem random_gkls(Eigen::Index d, int n_jumps, std::uint64_t seed);

/// Qubit Pauli matrices and basis projectors used by the models.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace zeno
