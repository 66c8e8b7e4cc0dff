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

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "zeno/core.hpp"

namespace zeno {

/// One distinct eigenvalue b of A with its spectral projection P and
/// nilpotent N = (A - bI)P. `index` is the smallest n with N^n = 0.
struct SpectralCluster {
  Complex eigenvalue;
  ComplexMatrix projection;
  ComplexMatrix nilpotent;
  int index = 1;
  Eigen::Index multiplicity = 1;
  bool semisimple = true;
  bool peripheral = false;
  /// Orthonormal basis of the invariant subspace (Schur vectors of the cluster).
  ComplexMatrix basis;
};

/// A = Σ_k (b_k P_k + N_k) with P_k P_l = δ_kl P_k and Σ_k P_k = I.
struct SpectralDecomposition {
  Eigen::Index dimension = 0;
  std::vector<SpectralCluster> clusters;
  double cluster_tol = 0.0;
  double imag_tol = 0.0;
  /// Spectral norm of the decomposed matrix; scales the projection residual checks.
  double scale = 0.0;

  ComplexMatrix reconstruct() const;
  std::vector<std::size_t> peripheral_indices() const;
  bool diagonalizable() const;
};

struct DecomposeOptions {
  /// Merge radius for eigenvalues; defaults to 1e-7 ‖A‖.
  std::optional<double> cluster_tol;
  /// |Re b| at or below this is treated as purely imaginary; defaults to 1e-7 ‖A‖.
  std::optional<double> imag_tol;
};

SpectralDecomposition decompose(const ComplexMatrix& a, const DecomposeOptions& opts = {});
SpectralDecomposition decompose(const ComplexMatrix& a, double cluster_tol, double imag_tol);

/// P_φ, the sum of the projections whose eigenvalues are purely imaginary.
ComplexMatrix peripheral_projection(const SpectralDecomposition& dec);

/// S_l = Σ_{k≠l} [(b_k - b_l) I + N_k]^{-1} P_k. Zero for a single cluster.
ComplexMatrix reduced_resolvent(const SpectralDecomposition& dec, std::size_t cluster);

/// Dissipative gap η, oscillating gap Δ and ν = min(η, Δ). Infinite gaps
/// mark an empty set; ν falls back to 1 when both are infinite.
struct GapData {
  double eta = std::numeric_limits<double>::infinity();
  double delta = std::numeric_limits<double>::infinity();
  double nu = 1.0;
};

GapData gaps(const SpectralDecomposition& dec);

/// ‖T‖ ‖T⁻¹‖ for the eigenvector matrix T with unit columns. Diagonalizable
/// inputs only; for those the ν rescaling of Jordan blocks has no effect.
double condition_number(const SpectralDecomposition& dec, double nu);

/// Σ_k e^{t b_k} e^{t N_k} P_k evaluated from the decomposition.
ComplexMatrix spectral_exp(const SpectralDecomposition& dec, double t);

}  // namespace zeno
