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

#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "zeno/errors.hpp"

namespace zeno {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* who) {
  if (a.rows() != a.cols()) {
    throw DimensionError(std::string(who) + ": expected a square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

/// True when every entry has finite real and imaginary parts.
template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& a) {
  return a.allFinite();
}

/// e^{tA} by scaling and squaring with a degree-13 Padé approximant.
ComplexMatrix expm(const ComplexMatrix& a, double t = 1.0);

/// Largest singular value. This is the only norm used for errors and bounds.
double spectral_norm(const ComplexMatrix& a);

template <typename Derived>
double spectral_norm(const Eigen::MatrixBase<Derived>& a) {
  return spectral_norm(ComplexMatrix(a));
}

/// Complex Schur form A = Q T Q^† with Q unitary and T upper triangular.
struct SchurForm {
  ComplexMatrix q;
  ComplexMatrix t;
};

SchurForm schur(const ComplexMatrix& a);

/// Swap the adjacent diagonal entries k and k+1 of a Schur form with a
/// Givens rotation, keeping A = Q T Q^† intact.
void schur_swap(SchurForm& form, Eigen::Index k);

/// Solve A Y - Y B = C for upper-triangular A and B with disjoint spectra.
ComplexMatrix solve_triangular_sylvester(const ComplexMatrix& a, const ComplexMatrix& b,
                                         const ComplexMatrix& c);

template <typename DerivedA, typename DerivedB>
ComplexMatrix kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          Complex(a(i, j)) * b.template cast<Complex>();
    }
  }
  return out;
}

// Column-stacking vectorization: vec(A X B) = (B^T ⊗ A) vec(X).

template <typename Derived>
ComplexVector vec(const Eigen::MatrixBase<Derived>& x) {
  ComplexMatrix m = x;
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index d);

/// Superoperator matrix of X -> A X B.
template <typename DerivedA, typename DerivedB>
ComplexMatrix sandwich(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return kron(b.transpose(), a);
}

/// Superoperator matrix of X -> A tr(B X).
template <typename DerivedA, typename DerivedB>
ComplexMatrix trace_map(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return vec(a) * vec(b.transpose()).transpose();
}

/// Superoperator matrix of X -> [H, X].
template <typename Derived>
ComplexMatrix commutator(const Eigen::MatrixBase<Derived>& h) {
  const auto d = h.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  return kron(id, h) - kron(h.transpose(), id);
}

template <typename Derived>
ComplexMatrix hermitian_part(const Eigen::MatrixBase<Derived>& a) {
  return 0.5 * (a + a.adjoint());
}

}  // namespace zeno
