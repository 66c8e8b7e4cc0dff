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

// Independent reference implementations used only by the tests.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "zeno/core.hpp"

namespace oracle {

using zeno::Complex;
using zeno::ComplexMatrix;

/// Truncated Taylor series with scaling and squaring.
inline ComplexMatrix taylor_expm(const ComplexMatrix& a, double t = 1.0) {
  const ComplexMatrix x = t * a;
  const double norm = x.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::pow(2.0, squarings) > 0.25) ++squarings;
  const ComplexMatrix y = x / std::pow(2.0, squarings);
  ComplexMatrix term = ComplexMatrix::Identity(a.rows(), a.cols());
  ComplexMatrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * y / double(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

/// Largest singular value via power iteration on A^† A.
inline double power_norm(const ComplexMatrix& a, int iterations = 5000) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> n;
  zeno::ComplexVector v(a.cols());
  for (auto& x : v) x = Complex(n(rng), n(rng));
  v.normalize();
  double lambda = 0.0;
  for (int i = 0; i < iterations; ++i) {
    zeno::ComplexVector w = a.adjoint() * (a * v);
    lambda = w.norm();
    if (lambda == 0.0) return 0.0;
    v = w / lambda;
  }
  return std::sqrt(lambda);
}

inline ComplexMatrix random_matrix(Eigen::Index r, Eigen::Index c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  ComplexMatrix m(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) m(i, j) = Complex(n(rng), n(rng));
  return m;
}

inline ComplexMatrix random_hermitian(Eigen::Index d, std::uint64_t seed) {
  const ComplexMatrix m = random_matrix(d, d, seed);
  return 0.5 * (m + m.adjoint());
}

inline ComplexMatrix qubit_state(double x, double y, double z) {
  ComplexMatrix rho(2, 2);
  rho << 0.5 * (1.0 + z), 0.5 * Complex(x, -y), 0.5 * Complex(x, y), 0.5 * (1.0 - z);
  return rho;
}

/// Max of f over pure qubit states on a latitude-longitude grid.
template <typename F>
double bloch_grid_max(F f, int n_theta = 200, int n_phi = 400) {
  double best = -INFINITY;
  for (int i = 0; i <= n_theta; ++i) {
    const double th = std::numbers::pi * i / n_theta;
    for (int j = 0; j < n_phi; ++j) {
      const double ph = 2.0 * std::numbers::pi * j / n_phi;
      best = std::max(best, f(qubit_state(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                                          std::cos(th))));
    }
  }
  return best;
}

/// Max of f over a radial grid of mixed qubit states (Bloch ball).
template <typename F>
double bloch_ball_max(F f, int n_r = 20, int n_theta = 60, int n_phi = 120) {
  double best = -INFINITY;
  for (int k = 1; k <= n_r; ++k) {
    const double r = double(k) / n_r;
    for (int i = 0; i <= n_theta; ++i) {
      const double th = std::numbers::pi * i / n_theta;
      for (int j = 0; j < n_phi; ++j) {
        const double ph = 2.0 * std::numbers::pi * j / n_phi;
        best = std::max(best, f(qubit_state(r * std::sin(th) * std::cos(ph),
                                            r * std::sin(th) * std::sin(ph), r * std::cos(th))));
      }
    }
  }
  return best;
}

inline double dist(const ComplexMatrix& a, const ComplexMatrix& b) {
  return zeno::spectral_norm(ComplexMatrix(a - b));
}

}  // namespace oracle
