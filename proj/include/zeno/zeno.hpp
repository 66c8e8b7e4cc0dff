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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zeno/core.hpp"
#include "zeno/spectral.hpp"

namespace zeno {

/// Strong generator B, weak generator C and the Zeno projection of C onto the
/// peripheral spectrum of B.
struct ZenoSplit {
  ComplexMatrix B;
  ComplexMatrix C;
  SpectralDecomposition decB;
  ComplexMatrix C_Z;
  ComplexMatrix P_phi;
  GapData gaps;
  /// Reduced resolvents S_l, keyed by cluster index, for the peripheral clusters.
  std::map<std::size_t, ComplexMatrix> resolvents;
};

ZenoSplit zeno_split(const ComplexMatrix& B, const ComplexMatrix& C,
                     const DecomposeOptions& opts = {});

enum class ErrorVariant { plain, peripheral };

ErrorVariant error_variant_from_string(const std::string& s);

/// ‖e^{t(γB+C)} - e^{tγB} e^{tC_Z} [P_φ]‖.
double adiabatic_error(const ZenoSplit& split, double gamma, double t, ErrorVariant variant);

struct BoundInputs {
  double M = 1.0;
  /// Constant used by the CPTP-specialized bound; it must also dominate the
  /// norms of the CPTP maps it stands in for.
  double M_cptp = 1.0;
  double eta = std::numeric_limits<double>::infinity();
  double delta = std::numeric_limits<double>::infinity();
  std::optional<double> chi;
  Eigen::Index D = 1;
  /// p(t) = Σ_n p_coeffs[n] t^n.
  std::vector<double> p_coeffs;
  double normC = 0.0;
  double normCZ = 0.0;
  /// Σ_l ‖S_l C P_l‖ over peripheral l.
  double resolvent_sum = 0.0;
  /// ‖Σ_l S_l C P_l‖ over peripheral l.
  double resolvent_total = 0.0;

  void validate() const;
};

/// Measures every constant from the split. M covers ‖e^{sB}‖ for
/// s ∈ [0, t_max γ_max] plus the asymptotic Σ‖P_k‖, with a 5% margin.
BoundInputs estimate_bound_inputs(const ZenoSplit& split, double t_max, double gamma_max);

/// ∫_0^∞ e^{-ηs} p(s) ds.
double decay_integral(const BoundInputs& in);
/// e^{-γηt} p(γt).
double decay_tail(const BoundInputs& in, double gamma, double t);

double bound_adiabatic(const BoundInputs& in, double gamma, double t);
double bound_cptp(const BoundInputs& in, double gamma, double t);
double bound_simplified(const BoundInputs& in, double gamma, double t);

struct SemigroupBoundReport {
  double M = 1.0;
  double max_ratio = 0.0;  ///< max over the grid of ‖e^{t(γB+C)}‖ / (M e^{tM‖C‖})
  bool ok = false;
};

/// Checks ‖e^{t(γB+C)}‖ ≤ M e^{tM‖C‖} on t_grid. Without M, it is taken as the
/// largest ‖e^{sγB}‖ over the grid and a dense refinement of [0, max t].
SemigroupBoundReport perturbed_semigroup_bound_check(const ComplexMatrix& B,
                                                     const ComplexMatrix& C, double gamma,
                                                     const std::vector<double>& t_grid,
                                                     std::optional<double> M = {});

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  ///< root-mean-square of the log-log residuals
};

/// Least squares of log(error) against log(gamma). Needs at least four points
/// spanning two decades and positive errors.
SlopeFit convergence_slope(const std::vector<std::pair<double, double>>& points);

/// Same fit restricted to the upper ceil(n/2) gamma values (at least three).
SlopeFit convergence_slope_top_half(std::vector<std::pair<double, double>> points);

struct PulsedZeno {
  ComplexMatrix product;
  ComplexMatrix limit;
  double distance = 0.0;
};

/// (P e^{(t/n)L})^n against e^{t PLP} P.
PulsedZeno pulsed_zeno_product(const ComplexMatrix& P, const ComplexMatrix& L, double t, int n);

struct Eigenspace {
  double value = 0.0;
  ComplexMatrix projection;
};

/// Eigenprojections of a Hermitian matrix, eigenvalues merged within
/// 1e-7 max(1, ‖K‖), ascending.
std::vector<Eigenspace> hermitian_eigenprojections(const ComplexMatrix& K);

/// H_Z = Σ_n P_n H P_n over the eigenprojections of K.
ComplexMatrix hamiltonian_zeno(const ComplexMatrix& K, const ComplexMatrix& H);

struct BohrProjection {
  double omega = 0.0;
  ComplexMatrix projection;
};

/// Spectral projections of X -> [K, X]: one per Bohr frequency ω = ε_m - ε_n,
/// 𝒫 = Σ P_m • P_n over the matching pairs. Ascending in ω.
std::vector<BohrProjection> commutator_projections(const ComplexMatrix& K);

}  // namespace zeno
