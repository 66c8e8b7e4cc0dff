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

#include "zeno/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "zeno/errors.hpp"
#include "zeno/experiments.hpp"
#include "zeno/models.hpp"
#include "zeno/spectral.hpp"
#include "zeno/zeno.hpp"

namespace zeno::acceptance {
namespace {

// Pinned tolerances.
constexpr double kPropagatorTol = 1e-8;
constexpr double kPropagatorSeconds = 5.0;
constexpr double kPeripheralTol = 1e-8;
constexpr double kZenoTol = 1e-8;
constexpr double kSlopeLow = -1.15;
constexpr double kSlopeHigh = -0.85;
constexpr double kSlopeSeconds = 30.0;
constexpr double kBoundSlack = 1e-9;
constexpr double kExampleTol = 1e-10;
constexpr double kNoGoTol = 1e-6;
constexpr double kZeroRate = 1e-12;
constexpr double kNonzeroRate = 1e-8;
constexpr double kBohrTol = 1e-8;
constexpr double kHalvingLow = 0.5 * 0.75;
constexpr double kHalvingHigh = 0.5 * 1.25;

constexpr int kDraws = 20;
const std::vector<double> kGammaGrid{10, 30, 100, 300, 1000};
const std::vector<std::pair<double, double>> kPanels{{0.1, 0.0}, {1.0, 0.0}, {2.0, 0.0},
                                                     {0.1, 2.0}, {1.0, 2.0}, {2.0, 2.0}};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double norm_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return spectral_norm(ComplexMatrix(a - b));
}

ThreeLevelParams draw(int i) { return random_three_level_params(0xacce97 + std::uint64_t(i)); }

CriterionResult analytic_propagator() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const auto p = draw(i);
    const auto gen = three_level_generators(p);
    for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      worst = std::max(worst, norm_diff(three_level_analytic_propagator(p, t).mat,
                                        expm(gen.D_super.mat, t)));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {1, "three-level analytic propagator", worst <= kPropagatorTol && secs < kPropagatorSeconds,
          fmt("max deviation %.3g", worst) + fmt(", %.2f s", secs)};
}

CriterionResult peripheral_structure() {
  double worst_eig = 0.0, worst_proj = 0.0;
  bool counts_ok = true;
  std::vector<ThreeLevelParams> params;
  for (int i = 0; i < kDraws; ++i) params.push_back(draw(i));
  for (const auto& [g, gam] : kPanels) params.push_back(figure_params(g, gam));
  for (const auto& p : params) {
    const auto dec = decompose(three_level_generators(p).D_super.mat);
    const auto per = three_level_peripheral(p);
    const auto idx = dec.peripheral_indices();
    if (idx.size() != 3) {
      counts_ok = false;
      continue;
    }
    const std::vector<std::pair<Complex, const ComplexMatrix*>> expected{
        {per.alpha_0, &per.P_0.mat}, {per.alpha_plus, &per.P_plus.mat}, {per.alpha_minus, &per.P_minus.mat}};
    for (const auto& [alpha, proj] : expected) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t arg = idx.front();
      for (std::size_t k : idx) {
        const double dist = std::abs(dec.clusters[k].eigenvalue - alpha);
        if (dist < best) best = dist, arg = k;
      }
      worst_eig = std::max(worst_eig, best);
      worst_proj = std::max(worst_proj, norm_diff(dec.clusters[arg].projection, *proj));
    }
  }
  return {2, "three-level peripheral structure",
          counts_ok && worst_eig <= kPeripheralTol && worst_proj <= kPeripheralTol,
          std::string(counts_ok ? "three peripheral clusters each" : "wrong peripheral count") +
              fmt(", eigenvalue error %.3g", worst_eig) + fmt(", projection error %.3g", worst_proj)};
}

CriterionResult zeno_generator() {
  double worst = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const auto p = draw(i);
    const auto gen = three_level_generators(p);
    const auto split = zeno_split(gen.D_super.mat, gen.L_super.mat);
    worst = std::max(worst, norm_diff(split.C_Z, three_level_zeno_generator(p).mat));
  }
  return {3, "three-level Zeno generator", worst <= kZenoTol, fmt("max deviation %.3g", worst)};
}

CriterionResult convergence_rate() {
  const auto start = std::chrono::steady_clock::now();
  const auto times = mixed_time_grid(0.25, 2.0);
  bool ok = true;
  std::string detail;
  for (double g : {1.0, 2.0}) {
    const auto gen = three_level_generators(figure_params(g, 2.0));
    const auto split = zeno_split(gen.D_super.mat, gen.L_super.mat);
    std::vector<double> errors(kGammaGrid.size() * times.size());
    parallel_for(errors.size(), [&](std::size_t i) {
      errors[i] = adiabatic_error(split, kGammaGrid[i / times.size()], times[i % times.size()],
                                  ErrorVariant::peripheral);
    });
    std::vector<std::pair<double, double>> sup;
    for (std::size_t k = 0; k < kGammaGrid.size(); ++k) {
      const auto first = errors.begin() + std::ptrdiff_t(k * times.size());
      sup.emplace_back(kGammaGrid[k], *std::max_element(first, first + std::ptrdiff_t(times.size())));
    }
    const auto top = convergence_slope_top_half(sup);
    const auto full = convergence_slope(sup);
    ok = ok && top.slope >= kSlopeLow && top.slope <= kSlopeHigh;
    detail += fmt("gt=%g: ", g) + fmt("slope %.4f", top.slope) + fmt(" (full grid %.4f); ", full.slope);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ok = ok && secs < kSlopeSeconds;
  return {4, "convergence rate", ok, detail + fmt("%.2f s", secs)};
}

struct BoundAudit {
  int points = 0;
  int violations[3] = {0, 0, 0};
  double worst[3] = {-INFINITY, -INFINITY, -INFINITY};
};

void audit_pair(const ComplexMatrix& B, const ComplexMatrix& C, BoundAudit& audit) {
  const auto times = TimeGrid{0.25, 2.0, 16, TimeGrid::Spacing::linear}.points();
  const auto split = zeno_split(B, C);
  const auto in = estimate_bound_inputs(split, times.back(), kGammaGrid.back());
  for (double gamma : kGammaGrid) {
    for (double t : times) {
      const double err = adiabatic_error(split, gamma, t, ErrorVariant::peripheral);
      const double bounds[3] = {bound_adiabatic(in, gamma, t), bound_cptp(in, gamma, t),
                                bound_simplified(in, gamma, t)};
      ++audit.points;
      for (int b = 0; b < 3; ++b) {
        const double slack = err - bounds[b];
        audit.worst[b] = std::max(audit.worst[b], slack);
        if (!(slack <= kBoundSlack)) ++audit.violations[b];
      }
    }
  }
}

CriterionResult bound_dominance() {
  const auto corpus = random_corpus();
  std::vector<std::pair<ComplexMatrix, ComplexMatrix>> pairs;
  for (const auto& inst : corpus) pairs.emplace_back(liouvillian(inst.strong).mat, liouvillian(inst.weak).mat);
  for (const auto& [g, gam] : kPanels) {
    const auto gen = three_level_generators(figure_params(g, gam));
    pairs.emplace_back(gen.D_super.mat, gen.L_super.mat);
  }
  std::vector<BoundAudit> audits(pairs.size());
  std::vector<std::string> failures(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    try {
      audit_pair(pairs[i].first, pairs[i].second, audits[i]);
    } catch (const Error& e) {
      failures[i] = e.what();
    }
  });
  BoundAudit total;
  std::string failure;
  for (std::size_t i = 0; i < audits.size(); ++i) {
    if (!failures[i].empty() && failure.empty()) failure = "instance " + std::to_string(i) + ": " + failures[i];
    total.points += audits[i].points;
    for (int b = 0; b < 3; ++b) {
      total.violations[b] += audits[i].violations[b];
      total.worst[b] = std::max(total.worst[b], audits[i].worst[b]);
    }
  }
  const bool ok = failure.empty() && total.violations[0] == 0 && total.violations[1] == 0 &&
                  total.violations[2] == 0;
  std::ostringstream d;
  d << total.points << " points; violations adiabatic/cptp/simplified = " << total.violations[0] << "/"
    << total.violations[1] << "/" << total.violations[2] << fmt("; worst slack %.3g", total.worst[0])
    << fmt("/%.3g", total.worst[1]) << fmt("/%.3g", total.worst[2]);
  if (!failure.empty()) d << "; " << failure;
  return {5, "bound dominance", ok, d.str()};
}

CriterionResult figure_reproduction(const Options& opts) {
  std::filesystem::create_directories(opts.output_dir);
  int violations = 0, nonmonotone = 0;
  double worst = -INFINITY;
  for (const auto& [g, gam] : kPanels) {
    SweepConfig cfg;
    cfg.model = SweepConfig::Model::three_level;
    cfg.params = figure_params(g, gam);
    cfg.gamma_grid = kGammaGrid;
    cfg.t_grid = TimeGrid{0.1, 2.0, 64, TimeGrid::Spacing::linear};
    cfg.cptp_constants = "caption";
    char name[64];
    std::snprintf(name, sizeof name, "figure_g%.1f_Gamma%.1f.csv", g, gam);
    cfg.output = opts.output_dir / name;
    const auto result = run_sweep(cfg);
    std::ofstream(cfg.output) << sweep_csv(cfg, result.rows);

    const std::size_t nt = 64;
    for (std::size_t k = 0; k < result.rows.size(); ++k) {
      const auto& r = result.rows[k];
      worst = std::max(worst, r.error_peripheral - r.bound_cptp);
      if (r.error_peripheral > r.bound_cptp + kBoundSlack) ++violations;
      if (k >= nt && r.bound_cptp > result.rows[k - nt].bound_cptp) ++nonmonotone;
    }
  }
  return {6, "figure bound reproduction", violations == 0 && nonmonotone == 0,
          std::to_string(violations) + " violations, " + std::to_string(nonmonotone) +
              " non-monotone steps" + fmt(", worst slack %.3g", worst) + "; CSV in " +
              opts.output_dir.string()};
}

CriterionResult dephasing_example() {
  const auto ex = dephasing_qubit_example();
  const auto projections = commutator_projections(ex.system.hamiltonian);
  ComplexMatrix total = ComplexMatrix::Zero(4, 4), zero_part = ComplexMatrix::Zero(4, 4);
  for (const auto& bp : projections) {
    const ComplexMatrix term = bp.projection * ex.L_super.mat * bp.projection;
    total += term;
    if (std::abs(bp.omega) < 1e-9) zero_part = term;
  }
  const double e1 = norm_diff(total, ex.expected_zeno.mat);
  const double e2 = norm_diff(zero_part, ex.expected_nonGKLS.mat);
  const bool f1 = gkls_form_check({2, total, Provenance::projected}).ok();
  const bool f2 = gkls_form_check({2, zero_part, Provenance::projected}).ok();
  return {7, "dephasing qubit example", e1 <= kExampleTol && e2 <= kExampleTol && f1 && !f2,
          fmt("sum deviation %.3g", e1) + fmt(", zero-frequency deviation %.3g", e2) +
              ", GKLS form " + (f1 ? "true" : "false") + "/" + (f2 ? "true" : "false")};
}

CriterionResult no_go() {
  bool ok = true;
  std::ostringstream d;
  const auto ex = dephasing_qubit_example();
  const auto r0 = no_go_check(ex.system, ex.expected_zeno, kNoGoTol);
  ok = ok && r0.equal_within_tol;
  d << fmt("dephasing %.9g", r0.gamma_original) << fmt(" vs %.9g", r0.gamma_projected);

  int equal = 0;
  double worst = 0.0, min_rate = INFINITY;
  for (int i = 0; i < 10; ++i) {
    const auto sys = random_gkls(2, 1 + i % 3, 0x9090 + std::uint64_t(i));
    const auto k = random_gkls(2, 0, 0x9190 + std::uint64_t(i)).hamiltonian;
    const auto split = zeno_split(ComplexMatrix(-kI * commutator(k)), liouvillian(sys).mat);
    const Superoperator lz{2, split.C_Z, Provenance::projected};
    const auto r = no_go_check(sys, lz, kNoGoTol);
    equal += r.equal_within_tol ? 1 : 0;
    worst = std::max(worst, std::abs(r.gamma_original - r.gamma_projected));
    min_rate = std::min(min_rate, r.gamma_original);
  }
  ok = ok && equal == 10;
  d << "; random instances equal " << equal << "/10" << fmt(", worst gap %.3g", worst);

  GklsSystem silent{2, random_gkls(2, 0, 0x91).hamiltonian, {ComplexMatrix::Zero(2, 2)}};
  const double zero_rate = purity_decay_rate(silent).gamma;
  ok = ok && zero_rate <= kZeroRate && min_rate >= kNonzeroRate;
  d << fmt("; zero-jump rate %.3g", zero_rate) << fmt(", smallest nonzero rate %.3g", min_rate);
  return {8, "purity decay no-go", ok, d.str()};
}

CriterionResult bohr_projections() {
  double worst_proj = 0.0, worst_sum = 0.0;
  bool matched = true;
  for (int i = 0; i < 10; ++i) {
    const Eigen::Index d = 2 + i % 3;
    const auto k = random_gkls(d, 0, 0xb0b0 + std::uint64_t(i)).hamiltonian;
    const auto projections = commutator_projections(k);
    const auto dec = decompose(ComplexMatrix(-kI * commutator(k)));
    if (dec.clusters.size() != projections.size()) matched = false;
    ComplexMatrix total = ComplexMatrix::Zero(d * d, d * d);
    for (const auto& bp : projections) {
      total += bp.projection;
      double best = INFINITY;
      const ComplexMatrix* proj = nullptr;
      for (const auto& c : dec.clusters) {
        const double dist = std::abs(c.eigenvalue - Complex(0.0, -bp.omega));
        if (dist < best) best = dist, proj = &c.projection;
      }
      if (best > kBohrTol) matched = false;
      worst_proj = std::max(worst_proj, norm_diff(*proj, bp.projection));
    }
    worst_sum = std::max(worst_sum, norm_diff(total, ComplexMatrix::Identity(d * d, d * d)));
  }
  return {9, "commutator eigenprojections",
          matched && worst_proj <= kBohrTol && worst_sum <= kBohrTol,
          std::string(matched ? "clusters matched" : "cluster mismatch") +
              fmt(", projection error %.3g", worst_proj) + fmt(", completeness error %.3g", worst_sum)};
}

CriterionResult pulsed_zeno() {
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2), p1 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  const ComplexMatrix measure = sandwich(p0, p0) + sandwich(p1, p1);
  double lo = INFINITY, hi = -INFINITY;
  for (int i = 0; i < 5; ++i) {
    const auto l = liouvillian(random_gkls(2, 1 + i % 3, 0x5150 + std::uint64_t(i))).mat;
    double prev = pulsed_zeno_product(measure, l, 1.0, 8).distance;
    for (int n : {16, 32, 64}) {
      const double cur = pulsed_zeno_product(measure, l, 1.0, n).distance;
      lo = std::min(lo, cur / prev);
      hi = std::max(hi, cur / prev);
      prev = cur;
    }
  }
  return {10, "pulsed Zeno rate", lo >= kHalvingLow && hi <= kHalvingHigh,
          fmt("distance ratio per doubling in [%.4f", lo) + fmt(", %.4f]", hi)};
}

CriterionResult spectral_properties() {
  const auto corpus = random_corpus();
  int passed = 0, total = 0;
  for (const auto& inst : corpus) {
    for (const auto* sys : {&inst.strong, &inst.weak}) {
      ++total;
      passed += spectral_property_check(*sys).ok() ? 1 : 0;
    }
  }
  // Flip the sign of the dissipator.
  const auto dissipative = std::find_if(corpus.begin(), corpus.end(),
                                        [](const CorpusInstance& c) { return !c.strong.jumps.empty(); });
  const GklsSystem& base = dissipative->strong;
  GklsSystem hamiltonian_only{base.d, base.hamiltonian, {}};
  Superoperator corrupted = liouvillian(hamiltonian_only);
  for (const auto& l : base.jumps) corrupted.mat -= dissipator(l);
  const auto bad = spectral_property_check(corrupted);
  return {11, "spectral properties of GKLS generators", passed == total && !bad.left_half_plane,
          std::to_string(passed) + "/" + std::to_string(total) + " generators pass" +
              fmt("; corrupted max Re = %.3g", bad.max_real_part) +
              (bad.left_half_plane ? " (not detected)" : " (detected)")};
}

}  // namespace

std::vector<CorpusInstance> random_corpus(std::size_t n) {
  std::vector<CorpusInstance> out;
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Index d = 2 + Eigen::Index(i % 3);
    const int strong_jumps = int((i / 3) % 4);
    const int weak_jumps = int((i + 1) % 4);
    out.push_back({random_gkls(d, strong_jumps, 7000 + 2 * i), random_gkls(d, weak_jumps, 7001 + 2 * i)});
  }
  return out;
}

CriterionResult run_criterion(int id, const Options& opts) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    switch (id) {
      case 1: r = analytic_propagator(); break;
      case 2: r = peripheral_structure(); break;
      case 3: r = zeno_generator(); break;
      case 4: r = convergence_rate(); break;
      case 5: r = bound_dominance(); break;
      case 6: r = figure_reproduction(opts); break;
      case 7: r = dephasing_example(); break;
      case 8: r = no_go(); break;
      case 9: r = bohr_projections(); break;
      case 10: r = pulsed_zeno(); break;
      case 11: r = spectral_properties(); break;
      default: throw ValidationError("unknown acceptance criterion " + std::to_string(id));
    }
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception& e) {
    r = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what()};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_all(const Options& opts) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, opts));
  return out;
}

std::string format(const CriterionResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f s", r.seconds);
  return std::string(r.passed ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.title +
         ": " + r.detail + " (" + secs + ")";
}

}  // namespace zeno::acceptance
