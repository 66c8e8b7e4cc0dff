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

#include "zeno/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/LU>
#include <Eigen/SVD>

namespace zeno {
namespace {

// Single-linkage grouping of Schur diagonal entries, followed by merging of
// groups whose centers still sit within the radius.
std::vector<std::vector<Eigen::Index>> cluster_eigenvalues(const ComplexVector& ev, double radius) {
  const Eigen::Index n = ev.size();
  std::vector<Eigen::Index> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Eigen::Index i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  auto unite = [&](Eigen::Index i, Eigen::Index j) { parent[find(i)] = find(j); };
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (std::abs(ev(i) - ev(j)) <= radius) unite(i, j);

  bool merged = true;
  while (merged) {
    merged = false;
    std::vector<Complex> center(n, 0.0);
    std::vector<int> count(n, 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      center[find(i)] += ev(i);
      ++count[find(i)];
    }
    for (Eigen::Index i = 0; i < n && !merged; ++i) {
      if (find(i) != i) continue;
      for (Eigen::Index j = i + 1; j < n && !merged; ++j) {
        if (find(j) != j) continue;
        if (std::abs(center[i] / double(count[i]) - center[j] / double(count[j])) <= radius) {
          unite(j, i);
          merged = true;
        }
      }
    }
  }

  std::vector<std::vector<Eigen::Index>> groups;
  std::vector<Eigen::Index> slot(n, -1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index root = find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<Eigen::Index>(groups.size());
      groups.emplace_back();
    }
    groups[slot[root]].push_back(i);
  }
  return groups;
}

// Reorder the Schur form so that the flagged diagonal entries come first.
// Returns the number of flagged entries.
Eigen::Index move_to_front(SchurForm& form, std::vector<bool> flagged) {
  const Eigen::Index n = form.t.rows();
  Eigen::Index front = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!flagged[j]) continue;
    for (Eigen::Index k = j; k > front; --k) {
      schur_swap(form, k - 1);
      std::swap(flagged[k - 1], flagged[k]);
    }
    ++front;
  }
  return front;
}

int nilpotency_index(const ComplexMatrix& n_k, Eigen::Index multiplicity, double tol, double scale) {
  ComplexMatrix power = n_k;
  for (int n = 1; n <= multiplicity; ++n) {
    if (spectral_norm(power) <= tol * std::pow(scale, n - 1)) return n;
    power = power * n_k;
  }
  return static_cast<int>(multiplicity) + 1;
}

}  // namespace

ComplexMatrix SpectralDecomposition::reconstruct() const {
  ComplexMatrix a = ComplexMatrix::Zero(dimension, dimension);
  for (const auto& c : clusters) a += c.eigenvalue * c.projection + c.nilpotent;
  return a;
}

std::vector<std::size_t> SpectralDecomposition::peripheral_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < clusters.size(); ++k)
    if (clusters[k].peripheral) out.push_back(k);
  return out;
}

bool SpectralDecomposition::diagonalizable() const {
  return std::all_of(clusters.begin(), clusters.end(),
                     [](const SpectralCluster& c) { return c.semisimple; });
}

SpectralDecomposition decompose(const ComplexMatrix& a, double cluster_tol, double imag_tol) {
  return decompose(a, DecomposeOptions{cluster_tol, imag_tol});
}

SpectralDecomposition decompose(const ComplexMatrix& a, const DecomposeOptions& opts) {
  require_square(a, "decompose");
  if (!a.allFinite()) throw ValidationError("decompose: input has non-finite entries");
  const Eigen::Index n = a.rows();
  const double norm = spectral_norm(a);
  const double unit = norm > 0.0 ? norm : 1.0;

  SpectralDecomposition dec;
  dec.dimension = n;
  dec.scale = norm;
  dec.cluster_tol = opts.cluster_tol.value_or(1e-7 * unit);
  dec.imag_tol = opts.imag_tol.value_or(1e-7 * unit);
  if (!(dec.cluster_tol > 0.0) || !(dec.imag_tol > 0.0)) {
    throw ValidationError("decompose: tolerances must be positive");
  }
  if (n == 0) return dec;

  const SchurForm base = schur(a);
  const ComplexVector ev = base.t.diagonal();
  auto groups = cluster_eigenvalues(ev, 2.0 * dec.cluster_tol);

  // Deterministic cluster order: decreasing real part, then increasing imaginary part.
  auto mean_of = [&](const std::vector<Eigen::Index>& g) {
    Complex s = 0.0;
    for (auto i : g) s += ev(i);
    return s / double(g.size());
  };
  std::sort(groups.begin(), groups.end(), [&](const auto& x, const auto& y) {
    const Complex mx = mean_of(x), my = mean_of(y);
    if (mx.real() != my.real()) return mx.real() > my.real();
    return mx.imag() < my.imag();
  });

  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  for (const auto& group : groups) {
    SchurForm form = base;
    std::vector<bool> flagged(n, false);
    for (auto i : group) flagged[i] = true;
    const Eigen::Index m = move_to_front(form, flagged);

    SpectralCluster c;
    c.multiplicity = m;
    c.eigenvalue = form.t.diagonal().head(m).mean();
    const ComplexMatrix q1 = form.q.leftCols(m);
    c.basis = q1;
    if (m == n) {
      c.projection = id;
    } else {
      const ComplexMatrix y = solve_triangular_sylvester(
          form.t.topLeftCorner(m, m), form.t.bottomRightCorner(n - m, n - m),
          form.t.topRightCorner(m, n - m));
      c.projection = q1 * (q1.adjoint() + y * form.q.rightCols(n - m).adjoint());
    }
    c.nilpotent = (a - c.eigenvalue * id) * c.projection;
    c.index = nilpotency_index(c.nilpotent, m, 10.0 * dec.cluster_tol, unit);
    c.semisimple = c.index == 1;
    c.peripheral = std::abs(c.eigenvalue.real()) <= dec.imag_tol;
    dec.clusters.push_back(std::move(c));
  }

  // Invariant audit.
  const double slack = 100.0 * dec.cluster_tol;
  const double rel_slack = slack / unit;
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  double worst_idempotency = 0.0;
  for (std::size_t k = 0; k < dec.clusters.size(); ++k) {
    const auto& p = dec.clusters[k].projection;
    sum += p;
    worst_idempotency = std::max(worst_idempotency, spectral_norm(ComplexMatrix(p * p - p)));
    for (std::size_t l = k + 1; l < dec.clusters.size(); ++l) {
      worst_idempotency = std::max(worst_idempotency,
                                   spectral_norm(ComplexMatrix(p * dec.clusters[l].projection)));
    }
  }
  if (worst_idempotency > rel_slack) {
    throw DecompositionError("decompose: spectral projections are not mutually orthogonal idempotents",
                             worst_idempotency);
  }
  const double completeness = spectral_norm(ComplexMatrix(sum - id));
  if (completeness > rel_slack) {
    throw DecompositionError("decompose: projections do not resolve the identity", completeness);
  }
  const double recon = spectral_norm(ComplexMatrix(dec.reconstruct() - a));
  if (recon > slack) {
    throw DecompositionError("decompose: canonical form does not reconstruct the input", recon);
  }
  return dec;
}

ComplexMatrix peripheral_projection(const SpectralDecomposition& dec) {
  ComplexMatrix p = ComplexMatrix::Zero(dec.dimension, dec.dimension);
  for (const auto& c : dec.clusters)
    if (c.peripheral) p += c.projection;
  return p;
}

ComplexMatrix reduced_resolvent(const SpectralDecomposition& dec, std::size_t cluster) {
  if (cluster >= dec.clusters.size()) {
    throw ValidationError("reduced_resolvent: cluster index " + std::to_string(cluster) +
                          " out of range");
  }
  const Eigen::Index n = dec.dimension;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const Complex bl = dec.clusters[cluster].eigenvalue;
  ComplexMatrix s = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k < dec.clusters.size(); ++k) {
    if (k == cluster) continue;
    const auto& c = dec.clusters[k];
    const ComplexMatrix shifted = (c.eigenvalue - bl) * id + c.nilpotent;
    s += shifted.partialPivLu().solve(c.projection);
  }
  return s;
}

GapData gaps(const SpectralDecomposition& dec) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  GapData g;
  for (const auto& c : dec.clusters)
    if (!c.peripheral) g.eta = std::min(g.eta, std::abs(c.eigenvalue.real()));
  for (std::size_t k = 0; k < dec.clusters.size(); ++k)
    for (std::size_t l = k + 1; l < dec.clusters.size(); ++l)
      g.delta = std::min(g.delta, std::abs(dec.clusters[k].eigenvalue - dec.clusters[l].eigenvalue));
  g.nu = std::min(g.eta, g.delta);
  if (g.nu == inf) g.nu = 1.0;
  return g;
}

double condition_number(const SpectralDecomposition& dec, double /*nu*/) {
  if (!dec.diagonalizable()) {
    throw UnsupportedInput(
        "condition_number: input has a defective eigenvalue; only diagonalizable inputs are supported");
  }
  const Eigen::Index n = dec.dimension;
  if (n == 0) return 1.0;
  ComplexMatrix t(n, n);
  Eigen::Index col = 0;
  for (const auto& c : dec.clusters) {
    t.middleCols(col, c.basis.cols()) = c.basis;
    col += c.basis.cols();
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(t);
  const auto& sv = svd.singularValues();
  return sv(0) / sv(n - 1);
}

ComplexMatrix spectral_exp(const SpectralDecomposition& dec, double t) {
  const Eigen::Index n = dec.dimension;
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (const auto& c : dec.clusters) {
    ComplexMatrix series = ComplexMatrix::Identity(n, n);
    ComplexMatrix term = ComplexMatrix::Identity(n, n);
    for (int k = 1; k < c.index; ++k) {
      term = term * c.nilpotent * (t / k);
      series += term;
    }
    out += std::exp(t * c.eigenvalue) * series * c.projection;
  }
  return out;
}

}  // namespace zeno
