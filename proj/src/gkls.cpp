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

#include "zeno/gkls.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

namespace zeno {
namespace {

constexpr double kStructureTol = 1e-10;

ComplexVector vec_identity(Eigen::Index d) { return vec(ComplexMatrix::Identity(d, d)); }

double min_hermitian_eigenvalue(const ComplexMatrix& h) {
  if (h.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool hermiticity_preserving_choi(const ComplexMatrix& c) {
  const double scale = std::max(1.0, spectral_norm(c));
  return spectral_norm(ComplexMatrix(c - c.adjoint())) <= kStructureTol * scale;
}

// Smooth objective over density matrices, with its Euclidean gradient in ρ
// (Hermitian, for the real inner product Re tr(A^† B)).
struct PurityProblem {
  Eigen::Index d;
  std::function<double(const ComplexMatrix&)> value;
  std::function<ComplexMatrix(const ComplexMatrix&)> gradient;
};

struct AscentResult {
  double value = 0.0;
  bool converged = false;
};

// Projected gradient ascent on ρ = V V^† / tr(V V^†), V of shape d x rank.
AscentResult ascend(const PurityProblem& prob, ComplexMatrix v, const PurityOptions& opts) {
  const Eigen::Index d = prob.d;
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  v /= v.norm();
  ComplexMatrix rho = v * v.adjoint();
  double f = prob.value(rho);
  double step = 1.0;
  std::vector<double> history;
  history.reserve(opts.max_iterations + 1);
  history.push_back(f);

  for (int it = 0; it < opts.max_iterations; ++it) {
    const ComplexMatrix gm = prob.gradient(rho);
    const Complex mean = (gm * rho).trace();
    const ComplexMatrix g = 2.0 * (gm - mean * id) * v;
    const double gnorm2 = g.squaredNorm();
    if (std::sqrt(gnorm2) <= opts.tol * std::max(1.0, gm.norm())) return {f, true};

    step *= 2.0;
    bool accepted = false;
    while (step > 1e-18) {
      ComplexMatrix trial = v + step * g;
      trial /= trial.norm();
      const ComplexMatrix trial_rho = trial * trial.adjoint();
      const double ft = prob.value(trial_rho);
      if (ft >= f + 1e-4 * step * gnorm2) {
        v = std::move(trial);
        rho = trial_rho;
        f = ft;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    history.push_back(f);
    if (!accepted) return {f, true};  // no ascent direction left at working precision
    const std::size_t n = history.size();
    if (n > 200 && f - history[n - 201] <= opts.tol * std::max(1.0, std::abs(f))) return {f, true};
  }
  return {f, false};
}

ComplexMatrix random_complex(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = Complex(normal(rng), normal(rng));
  return m;
}

PurityRate maximize(const PurityProblem& prob, const PurityOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  PurityRate out;
  out.mixed_max = -std::numeric_limits<double>::infinity();
  out.pure_max = -std::numeric_limits<double>::infinity();
  bool any_converged = false;

  for (int r = 0; r < opts.restarts; ++r) {
    const auto mixed = ascend(prob, random_complex(rng, prob.d, prob.d), opts);
    const auto pure = ascend(prob, random_complex(rng, prob.d, 1), opts);
    any_converged = any_converged || mixed.converged || pure.converged;
    out.mixed_max = std::max(out.mixed_max, mixed.value);
    out.pure_max = std::max(out.pure_max, pure.value);
  }

  if (prob.d == 2 && opts.bloch_grid > 0) {
    // Fibonacci lattice on the Bloch sphere.
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    const int n = opts.bloch_grid;
    for (int i = 0; i < n; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / n;
      const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * i;
      const double x = rad * std::cos(phi), y = rad * std::sin(phi);
      ComplexMatrix rho(2, 2);
      rho << 0.5 * (1.0 + z), 0.5 * Complex(x, -y), 0.5 * Complex(x, y), 0.5 * (1.0 - z);
      out.pure_max = std::max(out.pure_max, prob.value(rho));
    }
  }

  out.gamma = std::max(out.mixed_max, out.pure_max);
  if (!any_converged) {
    throw EstimationError("purity_decay_rate: no restart of the ascent converged", out.gamma);
  }
  return out;
}

}  // namespace

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::hamiltonian: return "hamiltonian";
    case Provenance::dissipator: return "dissipator";
    case Provenance::full: return "full";
    case Provenance::projected: return "projected";
    case Provenance::propagator: return "propagator";
  }
  return "full";
}

Provenance provenance_from_string(const std::string& s) {
  if (s == "hamiltonian") return Provenance::hamiltonian;
  if (s == "dissipator") return Provenance::dissipator;
  if (s == "full") return Provenance::full;
  if (s == "projected") return Provenance::projected;
  if (s == "propagator") return Provenance::propagator;
  throw ValidationError("unknown superoperator provenance '" + s + "'");
}

void validate(const GklsSystem& sys) {
  const Eigen::Index d = sys.d;
  if (d <= 0) throw ValidationError("GKLS system: dimension must be positive");
  if (sys.hamiltonian.rows() != d || sys.hamiltonian.cols() != d) {
    throw DimensionError("GKLS system: Hamiltonian must be " + std::to_string(d) + "x" +
                         std::to_string(d));
  }
  const double hn = spectral_norm(sys.hamiltonian);
  if (spectral_norm(ComplexMatrix(sys.hamiltonian - sys.hamiltonian.adjoint())) > 1e-12 * hn) {
    throw ValidationError("GKLS system: Hamiltonian is not Hermitian");
  }
  for (const auto& l : sys.jumps) {
    if (l.rows() != d || l.cols() != d) {
      throw DimensionError("GKLS system: jump operators must be " + std::to_string(d) + "x" +
                           std::to_string(d));
    }
  }
}

ComplexMatrix dissipator(const ComplexMatrix& l) {
  const Eigen::Index d = l.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const ComplexMatrix ll = l.adjoint() * l;
  return kron(l.conjugate(), l) - 0.5 * kron(id, ll) - 0.5 * kron(ll.transpose(), id);
}

Superoperator liouvillian(const GklsSystem& sys) {
  validate(sys);
  Superoperator out;
  out.d = sys.d;
  out.mat = -kI * commutator(sys.hamiltonian);
  for (const auto& l : sys.jumps) out.mat += dissipator(l);
  const bool has_h = sys.hamiltonian.norm() > 0.0;
  const bool has_d = std::any_of(sys.jumps.begin(), sys.jumps.end(),
                                 [](const ComplexMatrix& l) { return l.norm() > 0.0; });
  out.provenance = has_h && has_d ? Provenance::full
                   : has_d        ? Provenance::dissipator
                                  : Provenance::hamiltonian;
  return out;
}

GklsSystem canonicalize(const GklsSystem& sys) {
  GklsSystem out = sys;
  const Eigen::Index d = sys.d;
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  for (auto& l : out.jumps) {
    const Complex c = l.trace() / double(d);
    l -= c * id;
    // D[L' + c] = D[L'] - i[(i/2)(c̄ L' - c L'^†), ·]
    out.hamiltonian += 0.5 * kI * (std::conj(c) * l - c * l.adjoint());
  }
  out.hamiltonian = hermitian_part(out.hamiltonian);
  return out;
}

ComplexMatrix choi(const Superoperator& e) {
  const Eigen::Index d = e.d;
  if (e.mat.rows() != d * d || e.mat.cols() != d * d) {
    throw DimensionError("choi: superoperator shape does not match d");
  }
  ComplexMatrix c = ComplexMatrix::Zero(d * d, d * d);
  for (Eigen::Index m = 0; m < d; ++m) {
    for (Eigen::Index n = 0; n < d; ++n) {
      const ComplexMatrix image = unvec(e.mat.col(m + n * d), d);
      // image ⊗ |m⟩⟨n|
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) c(i * d + m, j * d + n) += image(i, j);
    }
  }
  return c;
}

CptpReport cptp_check(const Superoperator& e) {
  const Eigen::Index d = e.d;
  CptpReport r;
  const double scale = std::max(1.0, spectral_norm(e.mat));
  const ComplexVector one = vec_identity(d);
  r.trace_preserving =
      (one.adjoint() * e.mat - one.adjoint()).norm() <= kStructureTol * scale;
  const ComplexMatrix c = choi(e);
  r.hermiticity_preserving = hermiticity_preserving_choi(c);
  r.min_choi_eigenvalue = min_hermitian_eigenvalue(c);
  r.completely_positive = r.min_choi_eigenvalue >= -1e-9 * spectral_norm(c);
  return r;
}

GklsFormReport gkls_form_check(const Superoperator& g) {
  const Eigen::Index d = g.d;
  GklsFormReport r;
  const double scale = std::max(1.0, spectral_norm(g.mat));
  const ComplexVector one = vec_identity(d);
  r.trace_annihilating = (one.adjoint() * g.mat).norm() <= kStructureTol * scale;
  const ComplexMatrix c = choi(g);
  r.hermiticity_preserving = hermiticity_preserving_choi(c);

  // Orthonormal basis of the complement of Σ_m |m⟩⊗|m⟩ / √d.
  ComplexVector omega = ComplexVector::Zero(d * d);
  for (Eigen::Index m = 0; m < d; ++m) omega(m * d + m) = 1.0 / std::sqrt(double(d));
  const ComplexMatrix q = ComplexMatrix::Identity(d * d, d * d) - omega * omega.adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> qs(q);
  const ComplexMatrix basis = qs.eigenvectors().rightCols(d * d - 1);
  r.min_conditional_eigenvalue = min_hermitian_eigenvalue(basis.adjoint() * c * basis);
  r.conditionally_completely_positive =
      r.min_conditional_eigenvalue >= -1e-9 * spectral_norm(c);
  return r;
}

double purity_objective(const std::vector<ComplexMatrix>& jumps, const ComplexMatrix& rho) {
  double total = 0.0;
  for (const auto& l : jumps) {
    const ComplexMatrix ld = l.adjoint();
    total += ((ld * l * rho * rho).trace() - (ld * rho * l * rho).trace()).real();
  }
  return 2.0 * total;
}

double purity_objective(const Superoperator& g, const ComplexMatrix& rho) {
  const ComplexVector x = vec(rho);
  return -2.0 * (x.adjoint() * g.mat * x)(0).real();
}

PurityRate purity_decay_rate(const GklsSystem& sys, const PurityOptions& opts) {
  validate(sys);
  const GklsSystem canon = canonicalize(sys);
  const auto& jumps = canon.jumps;
  PurityProblem prob{
      canon.d,
      [&jumps](const ComplexMatrix& rho) { return purity_objective(jumps, rho); },
      [&jumps](const ComplexMatrix& rho) {
        ComplexMatrix g = ComplexMatrix::Zero(rho.rows(), rho.cols());
        for (const auto& l : jumps) {
          const ComplexMatrix a = l.adjoint() * l;
          g += rho * a + a * rho - l * rho * l.adjoint() - l.adjoint() * rho * l;
        }
        return ComplexMatrix(2.0 * hermitian_part(g));
      }};
  return maximize(prob, opts);
}

PurityRate purity_decay_rate(const Superoperator& g, const PurityOptions& opts) {
  const ComplexMatrix sym = g.mat + g.mat.adjoint();
  PurityProblem prob{
      g.d, [&g](const ComplexMatrix& rho) { return purity_objective(g, rho); },
      [&sym, d = g.d](const ComplexMatrix& rho) {
        return ComplexMatrix(hermitian_part(unvec(-2.0 * sym * vec(rho), d)));
      }};
  return maximize(prob, opts);
}

NoGoReport no_go_check(const GklsSystem& sys, const Superoperator& zeno_generator, double tol,
                       const PurityOptions& opts) {
  NoGoReport r;
  r.gamma_original = purity_decay_rate(sys, opts).gamma;
  r.gamma_projected = purity_decay_rate(zeno_generator, opts).gamma;
  r.equal_within_tol = std::abs(r.gamma_original - r.gamma_projected) <= tol;
  return r;
}

}  // namespace zeno
