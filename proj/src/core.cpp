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

#include "zeno/core.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace zeno {

ComplexMatrix expm(const ComplexMatrix& a, double t) {
  require_square(a, "expm");
  if (a.size() == 0) return a;
  const ComplexMatrix scaled = Complex(t) * a;
  ComplexMatrix out = scaled.exp();
  return out;
}

double spectral_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

SchurForm schur(const ComplexMatrix& a) {
  require_square(a, "schur");
  const Eigen::Index n = a.rows();
  if (n == 0) return {a, a};
  Eigen::ComplexSchur<ComplexMatrix> cs(n);
  cs.setMaxIterations(60 * n);
  cs.compute(a);
  if (cs.info() != Eigen::Success) {
    throw FactorizationError("complex Schur iteration did not converge for " +
                                 std::to_string(n) + "x" + std::to_string(n) + " input",
                             static_cast<int>(cs.getMaxIterations()));
  }
  SchurForm form{cs.matrixU(), cs.matrixT()};
  form.t.triangularView<Eigen::StrictlyLower>().setZero();
  return form;
}

void schur_swap(SchurForm& form, Eigen::Index k) {
  ComplexMatrix& t = form.t;
  const Eigen::Index n = t.rows();
  const Complex t11 = t(k, k);
  const Complex t22 = t(k + 1, k + 1);
  const Complex x = t22 - t11;
  const Complex y = t(k, k + 1);
  const double r = std::hypot(std::abs(x), std::abs(y));
  if (r == 0.0) return;
  // First column of the rotation is the eigenvector of the 2x2 block for t22.
  const Complex c = y / r;
  const Complex s = x / r;
  Eigen::Matrix2cd g;
  g << c, -std::conj(s), s, std::conj(c);

  t.block(k, k, 2, n - k) = g.adjoint() * t.block(k, k, 2, n - k);
  t.block(0, k, k + 2, 2) = t.block(0, k, k + 2, 2) * g;
  form.q.block(0, k, n, 2) = form.q.block(0, k, n, 2) * g;
  t(k + 1, k) = 0.0;
  t(k, k) = t22;
  t(k + 1, k + 1) = t11;
}

ComplexMatrix solve_triangular_sylvester(const ComplexMatrix& a, const ComplexMatrix& b,
                                         const ComplexMatrix& c) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = b.rows();
  if (a.cols() != m || b.cols() != n || c.rows() != m || c.cols() != n) {
    throw DimensionError("solve_triangular_sylvester: incompatible operand shapes");
  }
  ComplexMatrix y(m, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    ComplexVector rhs = c.col(j);
    for (Eigen::Index i = 0; i < j; ++i) rhs += b(i, j) * y.col(i);
    ComplexMatrix shifted = a;
    shifted.diagonal().array() -= b(j, j);
    y.col(j) = shifted.triangularView<Eigen::Upper>().solve(rhs);
  }
  return y;
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index d) {
  if (v.size() != d * d) {
    throw DimensionError("unvec: vector of length " + std::to_string(v.size()) +
                         " is not a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

}  // namespace zeno
