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

#include "zeno/zeno.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "zeno/errors.hpp"

namespace zeno {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// expm1(x)/x with the removable singularity filled in.
double expm1_ratio(double x) { return x == 0.0 ? 1.0 : std::expm1(x) / x; }

// (a e^{ta} - b e^{tb}) / (a - b), and its limit e^{ta}(1 + ta) at a = b.
double exp_quotient(double a, double b, double t) {
  const double delta = a - b;
  return std::exp(t * b) * (std::exp(t * delta) + b * t * expm1_ratio(t * delta));
}

// Σ_n c_n x^n e^{-y}, each term in log space.
double damped_polynomial(const std::vector<double>& c, double x, double y) {
  double total = 0.0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    if (c[n] == 0.0) continue;
    if (n == 0) {
      total += c[n] * std::exp(-y);
    } else if (x > 0.0) {
      total += std::exp(std::log(c[n]) + double(n) * std::log(x) - y);
    }
  }
  return total;
}

std::vector<double> log_linear_grid(double stop, int count) {
  std::vector<double> grid;
  if (stop <= 0.0) return {0.0};
  for (int i = 0; i < count; ++i) grid.push_back(stop * i / (count - 1));
  const double lo = std::log(stop * 1e-4);
  const double hi = std::log(stop);
  for (int i = 0; i < count; ++i) grid.push_back(std::exp(lo + (hi - lo) * i / (count - 1)));
  std::sort(grid.begin(), grid.end());
  return grid;
}

SlopeFit fit_loglog(const std::vector<std::pair<double, double>>& points, std::size_t min_points,
                    double min_decades) {
  if (points.size() < min_points) {
    throw DegenerateData("convergence_slope: need at least " + std::to_string(min_points) +
                         " points");
  }
  double gmin = kInf, gmax = 0.0;
  for (const auto& [g, e] : points) {
    if (!(g > 0.0) || !std::isfinite(g)) throw DegenerateData("convergence_slope: gamma must be positive");
    if (!(e > 0.0) || !std::isfinite(e)) {
      throw DegenerateData("convergence_slope: errors must be positive and finite");
    }
    gmin = std::min(gmin, g);
    gmax = std::max(gmax, g);
  }
  if (std::log10(gmax / gmin) < min_decades - 1e-12) {
    throw DegenerateData("convergence_slope: gamma values span too few decades");
  }
  const double n = double(points.size());
  double sx = 0, sy = 0;
  for (const auto& [g, e] : points) {
    sx += std::log(g);
    sy += std::log(e);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& [g, e] : points) {
    sxx += (std::log(g) - mx) * (std::log(g) - mx);
    sxy += (std::log(g) - mx) * (std::log(e) - my);
  }
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (const auto& [g, e] : points) {
    const double r = std::log(e) - (fit.intercept + fit.slope * std::log(g));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace

ZenoSplit zeno_split(const ComplexMatrix& B, const ComplexMatrix& C, const DecomposeOptions& opts) {
  require_square(B, "zeno_split");
  if (C.rows() != B.rows() || C.cols() != B.cols()) {
    throw DimensionError("zeno_split: strong and weak generators differ in shape");
  }
  ZenoSplit s;
  s.B = B;
  s.C = C;
  s.decB = decompose(B, opts);
  const auto& dec = s.decB;
  for (const auto& cl : dec.clusters) {
    if (cl.eigenvalue.real() > dec.imag_tol) {
      throw SpectrumViolation("zeno_split: strong generator has an eigenvalue with Re b = " +
                              std::to_string(cl.eigenvalue.real()) + " > 0");
    }
    if (cl.peripheral && spectral_norm(cl.nilpotent) > 100.0 * dec.cluster_tol) {
      throw SemisimplicityViolation("zeno_split: peripheral eigenvalue is not semisimple");
    }
  }

  const Eigen::Index n = B.rows();
  s.C_Z = ComplexMatrix::Zero(n, n);
  s.P_phi = ComplexMatrix::Zero(n, n);
  for (std::size_t k : dec.peripheral_indices()) {
    const auto& p = dec.clusters[k].projection;
    s.C_Z += p * C * p;
    s.P_phi += p;
    s.resolvents.emplace(k, reduced_resolvent(dec, k));
  }
  s.gaps = gaps(dec);

  const double scale = spectral_norm(B) * spectral_norm(C);
  const double comm = spectral_norm(ComplexMatrix((s.C_Z * B - B * s.C_Z) * s.P_phi));
  if (comm > 1e-8 * std::max(scale, 1e-300) && comm > 0.0) {
    throw DecompositionError("zeno_split: Zeno generator does not commute with B on the "
                             "peripheral subspace",
                             comm);
  }
  return s;
}

ErrorVariant error_variant_from_string(const std::string& s) {
  if (s == "plain") return ErrorVariant::plain;
  if (s == "peripheral") return ErrorVariant::peripheral;
  throw ValidationError("unknown error variant '" + s + "'");
}

double adiabatic_error(const ZenoSplit& split, double gamma, double t, ErrorVariant variant) {
  const ComplexMatrix exact = expm(ComplexMatrix(gamma * split.B + split.C), t);
  ComplexMatrix approx = expm(split.B, t * gamma) * expm(split.C_Z, t);
  if (variant == ErrorVariant::peripheral) approx = approx * split.P_phi;
  return spectral_norm(ComplexMatrix(exact - approx));
}

void BoundInputs::validate() const {
  if (!(M >= 1.0) || !(M_cptp >= 1.0)) throw ValidationError("BoundInputs: M must be >= 1");
  if (normC < 0 || normCZ < 0 || resolvent_sum < 0 || resolvent_total < 0) {
    throw ValidationError("BoundInputs: norms must be nonnegative");
  }
  for (double c : p_coeffs) {
    if (c < 0) throw ValidationError("BoundInputs: p(t) coefficients must be nonnegative");
  }
}

BoundInputs estimate_bound_inputs(const ZenoSplit& split, double t_max, double gamma_max) {
  const auto& dec = split.decB;
  BoundInputs in;
  in.D = split.B.rows();
  in.eta = split.gaps.eta;
  in.delta = split.gaps.delta;
  if (dec.diagonalizable()) in.chi = condition_number(dec, split.gaps.nu);

  double m = 1.0;
  double periph = 0.0;
  for (std::size_t k : dec.peripheral_indices()) periph += spectral_norm(dec.clusters[k].projection);
  m = std::max(m, periph);
  for (double s : log_linear_grid(t_max * gamma_max, 64)) {
    m = std::max(m, spectral_norm(expm(split.B, s)));
  }
  in.M = 1.05 * m;
  // CPTP maps on d x d matrices have norm at most sqrt(d) on vectorized operators.
  in.M_cptp = std::max(in.M, std::sqrt(std::sqrt(double(in.D))));

  if (in.chi) {
    std::size_t decaying = 0;
    for (const auto& cl : dec.clusters) decaying += cl.peripheral ? 0 : 1;
    if (decaying > 0) in.p_coeffs = {*in.chi * double(decaying)};
  } else {
    int top = 0;
    for (const auto& cl : dec.clusters) {
      if (!cl.peripheral) top = std::max(top, cl.index);
    }
    in.p_coeffs.assign(top, 0.0);
    double fact = 1.0;
    for (int n = 0; n < top; ++n) {
      if (n > 0) fact *= n;
      for (const auto& cl : dec.clusters) {
        if (cl.peripheral || n >= cl.index) continue;
        ComplexMatrix term = cl.projection;
        for (int j = 0; j < n; ++j) term = cl.nilpotent * term;
        in.p_coeffs[n] += spectral_norm(term) / fact;
      }
    }
  }

  in.normC = spectral_norm(split.C);
  in.normCZ = spectral_norm(split.C_Z);
  ComplexMatrix total = ComplexMatrix::Zero(in.D, in.D);
  for (const auto& [k, s] : split.resolvents) {
    const ComplexMatrix term = s * split.C * dec.clusters[k].projection;
    in.resolvent_sum += spectral_norm(term);
    total += term;
  }
  in.resolvent_total = spectral_norm(total);
  return in;
}

double decay_integral(const BoundInputs& in) {
  if (!std::isfinite(in.eta)) return 0.0;
  double total = 0.0, fact = 1.0;
  for (std::size_t n = 0; n < in.p_coeffs.size(); ++n) {
    if (n > 0) fact *= double(n);
    total += fact * in.p_coeffs[n] / std::pow(in.eta, double(n + 1));
  }
  return total;
}

double decay_tail(const BoundInputs& in, double gamma, double t) {
  const double x = gamma * t;
  if (!std::isfinite(in.eta)) return t == 0.0 && !in.p_coeffs.empty() ? in.p_coeffs[0] : 0.0;
  return damped_polynomial(in.p_coeffs, x, in.eta * x);
}

double bound_adiabatic(const BoundInputs& in, double gamma, double t) {
  const double a = in.M * in.normC;
  const double b = in.normCZ;
  double inner = 0.0;
  if (in.resolvent_sum > 0.0) inner += (in.M + 1.0) * in.resolvent_sum * exp_quotient(a, b, t);
  const double integral = decay_integral(in);
  if (a > 0.0 && integral > 0.0) inner += a * std::exp(t * a) * integral;
  return inner / gamma + decay_tail(in, gamma, t);
}

double bound_cptp(const BoundInputs& in, double gamma, double t) {
  const double m = in.M_cptp;
  double inner = 0.0;
  if (in.resolvent_total > 0.0) {
    inner += m * in.resolvent_total * (2.0 + m * t * (in.normC + in.normCZ));
  }
  const double integral = decay_integral(in);
  if (in.normC > 0.0 && integral > 0.0) inner += m * in.normC * integral;
  return inner / gamma + decay_tail(in, gamma, t);
}

double bound_simplified(const BoundInputs& in, double gamma, double t) {
  if (!in.chi) return kInf;
  const double m = double(in.D) * *in.chi;
  const double gap_terms = 2.0 * m / in.delta + 1.0 / in.eta;
  double first = 0.0;
  if (gap_terms > 0.0 && in.normC > 0.0) {
    first = m * m * gap_terms * in.normC * std::exp(2.0 * t * m * m * in.normC) / gamma;
  }
  double tail;
  if (t == 0.0) {
    tail = m;
  } else if (!std::isfinite(in.eta)) {
    tail = 0.0;
  } else {
    const double x = gamma * in.eta * t;
    std::vector<double> ones(std::size_t(in.D));
    double fact = 1.0;
    for (std::size_t n = 0; n < ones.size(); ++n) {
      if (n > 0) fact *= double(n);
      ones[n] = 1.0 / fact;
    }
    tail = m * damped_polynomial(ones, x, x);
  }
  return first + tail;
}

SemigroupBoundReport perturbed_semigroup_bound_check(const ComplexMatrix& B,
                                                     const ComplexMatrix& C, double gamma,
                                                     const std::vector<double>& t_grid,
                                                     std::optional<double> M) {
  require_square(B, "perturbed_semigroup_bound_check");
  SemigroupBoundReport r;
  if (M) {
    r.M = *M;
  } else {
    double tmax = 0.0;
    for (double t : t_grid) tmax = std::max(tmax, t);
    double m = 1.0;
    for (double s : log_linear_grid(gamma * tmax, 64)) m = std::max(m, spectral_norm(expm(B, s)));
    for (double t : t_grid) m = std::max(m, spectral_norm(expm(B, gamma * t)));
    r.M = m;
  }
  const double normC = spectral_norm(C);
  const ComplexMatrix gen = gamma * B + C;
  for (double t : t_grid) {
    const double lhs = spectral_norm(expm(gen, t));
    r.max_ratio = std::max(r.max_ratio, lhs / (r.M * std::exp(t * r.M * normC)));
  }
  r.ok = r.max_ratio <= 1.0 + 1e-12;
  return r;
}

SlopeFit convergence_slope(const std::vector<std::pair<double, double>>& points) {
  return fit_loglog(points, 4, 2.0);
}

SlopeFit convergence_slope_top_half(std::vector<std::pair<double, double>> points) {
  std::sort(points.begin(), points.end());
  const std::size_t keep = (points.size() + 1) / 2;
  points.erase(points.begin(), points.end() - std::ptrdiff_t(keep));
  return fit_loglog(points, 3, 0.0);
}

PulsedZeno pulsed_zeno_product(const ComplexMatrix& P, const ComplexMatrix& L, double t, int n) {
  require_square(P, "pulsed_zeno_product");
  if (L.rows() != P.rows() || L.cols() != P.cols()) {
    throw DimensionError("pulsed_zeno_product: projection and generator differ in shape");
  }
  if (n < 1) throw ValidationError("pulsed_zeno_product: n must be positive");
  if (spectral_norm(ComplexMatrix(P * P - P)) > 1e-10 * std::max(1.0, spectral_norm(P))) {
    throw ValidationError("pulsed_zeno_product: P is not idempotent");
  }
  PulsedZeno out;
  const ComplexMatrix step = P * expm(L, t / n);
  out.product = ComplexMatrix::Identity(P.rows(), P.cols());
  for (int i = 0; i < n; ++i) out.product = step * out.product;
  out.limit = expm(ComplexMatrix(P * L * P), t) * P;
  out.distance = spectral_norm(ComplexMatrix(out.product - out.limit));
  return out;
}

std::vector<Eigenspace> hermitian_eigenprojections(const ComplexMatrix& K) {
  require_square(K, "hermitian_eigenprojections");
  const double tol = 1e-7 * std::max(1.0, spectral_norm(K));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(K));
  const auto& w = es.eigenvalues();
  const auto& v = es.eigenvectors();
  std::vector<Eigenspace> out;
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= w.size(); ++i) {
    if (i < w.size() && w(i) - w(i - 1) <= tol) continue;
    const auto block = v.middleCols(start, i - start);
    out.push_back({w.segment(start, i - start).mean(), block * block.adjoint()});
    start = i;
  }
  return out;
}

ComplexMatrix hamiltonian_zeno(const ComplexMatrix& K, const ComplexMatrix& H) {
  if (H.rows() != K.rows() || H.cols() != K.cols()) {
    throw DimensionError("hamiltonian_zeno: K and H differ in shape");
  }
  ComplexMatrix hz = ComplexMatrix::Zero(H.rows(), H.cols());
  for (const auto& e : hermitian_eigenprojections(K)) hz += e.projection * H * e.projection;
  return hermitian_part(hz);
}

std::vector<BohrProjection> commutator_projections(const ComplexMatrix& K) {
  const auto spaces = hermitian_eigenprojections(K);
  const double tol = 1e-7 * std::max(1.0, spectral_norm(K));
  struct Pair {
    double omega;
    std::size_t m, n;
  };
  std::vector<Pair> pairs;
  for (std::size_t m = 0; m < spaces.size(); ++m)
    for (std::size_t n = 0; n < spaces.size(); ++n)
      pairs.push_back({spaces[m].value - spaces[n].value, m, n});
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Pair& a, const Pair& b) { return a.omega < b.omega; });

  std::vector<BohrProjection> out;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= pairs.size(); ++i) {
    if (i < pairs.size() && pairs[i].omega - pairs[i - 1].omega <= tol) continue;
    BohrProjection bp;
    bp.projection = ComplexMatrix::Zero(K.size(), K.size());
    double sum = 0.0;
    for (std::size_t j = start; j < i; ++j) {
      bp.projection += sandwich(spaces[pairs[j].m].projection, spaces[pairs[j].n].projection);
      sum += pairs[j].omega;
    }
    bp.omega = sum / double(i - start);
    out.push_back(std::move(bp));
    start = i;
  }
  return out;
}

}  // namespace zeno
