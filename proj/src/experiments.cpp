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

#include "zeno/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "zeno/errors.hpp"
#include "zeno/io.hpp"

namespace zeno {
namespace {

using nlohmann::json;

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json fit_json(const SlopeFit& f) {
  return {{"slope", f.slope}, {"intercept", f.intercept}, {"residual", f.residual}};
}

json inputs_json(const BoundInputs& in) {
  return {{"M", in.M},
          {"M_cptp", in.M_cptp},
          {"eta", number(in.eta)},
          {"delta", number(in.delta)},
          {"chi", in.chi ? number(*in.chi) : json(nullptr)},
          {"D", in.D},
          {"p_coeffs", in.p_coeffs},
          {"normC", in.normC},
          {"normCZ", in.normCZ},
          {"resolvent_sum", in.resolvent_sum},
          {"resolvent_total", in.resolvent_total}};
}

ComplexMatrix load_generator(const std::filesystem::path& path) {
  const json j = io::read_file(path);
  return io::matrix_from_json(j.contains("matrix") ? j.at("matrix") : j);
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

constexpr double kSlack = 1e-9;

}  // namespace

unsigned worker_count() {
  if (const char* env = std::getenv("ZENO_LIMITS_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return unsigned(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n && !failed; i = next++) {
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> TimeGrid::points() const {
  std::vector<double> out;
  if (count == 1) return {start};
  for (int i = 0; i < count; ++i) {
    const double f = double(i) / (count - 1);
    out.push_back(spacing == Spacing::linear
                      ? start + (stop - start) * f
                      : std::exp(std::log(start) + (std::log(stop) - std::log(start)) * f));
  }
  return out;
}

std::vector<double> mixed_time_grid(double start, double stop, int half) {
  TimeGrid lin{start, stop, half, TimeGrid::Spacing::linear};
  TimeGrid lg{start, stop, half, TimeGrid::Spacing::log};
  auto out = lin.points();
  for (double t : lg.points()) out.push_back(t);
  std::sort(out.begin(), out.end());
  return out;
}

void SweepConfig::validate() const {
  if (gamma_grid.size() < 4) throw ValidationError("sweep: gamma_grid needs at least 4 points");
  for (std::size_t i = 0; i < gamma_grid.size(); ++i) {
    if (!(gamma_grid[i] > 0.0)) throw ValidationError("sweep: gamma values must be positive");
    if (i > 0 && !(gamma_grid[i] > gamma_grid[i - 1])) {
      throw ValidationError("sweep: gamma_grid must be strictly increasing");
    }
  }
  if (t_grid.count < 1) throw ValidationError("sweep: t_grid.count must be positive");
  if (t_grid.start < 0.0 || t_grid.stop < t_grid.start) {
    throw ValidationError("sweep: t_grid needs 0 <= start <= stop");
  }
  if (t_grid.spacing == TimeGrid::Spacing::log && !(t_grid.start > 0.0)) {
    throw ValidationError("sweep: log spacing needs start > 0");
  }
  if (peripheral && !(t_grid.start > 0.0)) {
    throw ValidationError("sweep: the peripheral variant needs t_grid.start > 0");
  }
  if (!plain && !peripheral) throw ValidationError("sweep: no error variant requested");
  if (cptp_constants != "measured" && cptp_constants != "caption") {
    throw ValidationError("sweep: cptp_constants must be 'measured' or 'caption'");
  }
  if (cptp_constants == "caption" && model != Model::three_level) {
    throw ValidationError("sweep: caption constants apply to the three-level model only");
  }
  if (model == Model::three_level) params.validate();
}

SweepConfig sweep_config_from_json(const json& j, const std::filesystem::path& base_dir) {
  SweepConfig cfg;
  const auto& model = j.at("model");
  if (model.is_string()) {
    const auto name = model.get<std::string>();
    if (name == "three-level") {
      cfg.model = SweepConfig::Model::three_level;
      if (j.contains("params")) cfg.params = io::params_from_json(j.at("params"));
    } else if (name == "dephasing-qubit") {
      cfg.model = SweepConfig::Model::dephasing_qubit;
      if (j.contains("params")) {
        cfg.qubit_Omega = j.at("params").value("Omega", cfg.qubit_Omega);
        cfg.qubit_kappa = j.at("params").value("kappa", cfg.qubit_kappa);
      }
    } else {
      throw ValidationError("sweep: unknown model '" + name + "'");
    }
  } else {
    cfg.model = SweepConfig::Model::files;
    cfg.strong_path = resolve(base_dir, model.at("strong").get<std::string>());
    cfg.weak_path = resolve(base_dir, model.at("weak").get<std::string>());
  }
  if (j.contains("gamma_grid")) cfg.gamma_grid = j.at("gamma_grid").get<std::vector<double>>();
  if (j.contains("t_grid")) {
    const auto& t = j.at("t_grid");
    cfg.t_grid.start = t.value("start", cfg.t_grid.start);
    cfg.t_grid.stop = t.value("stop", cfg.t_grid.stop);
    cfg.t_grid.count = t.value("count", cfg.t_grid.count);
    const auto spacing = t.value("spacing", std::string("linear"));
    if (spacing == "linear") {
      cfg.t_grid.spacing = TimeGrid::Spacing::linear;
    } else if (spacing == "log") {
      cfg.t_grid.spacing = TimeGrid::Spacing::log;
    } else {
      throw ValidationError("sweep: t_grid.spacing must be linear or log");
    }
  }
  if (j.contains("variants")) {
    cfg.plain = cfg.peripheral = false;
    for (const auto& v : j.at("variants")) {
      const auto kind = error_variant_from_string(v.get<std::string>());
      (kind == ErrorVariant::plain ? cfg.plain : cfg.peripheral) = true;
    }
  }
  if (j.contains("bounds")) {
    cfg.adiabatic = cfg.cptp = cfg.simplified = false;
    for (const auto& b : j.at("bounds")) {
      const auto name = b.get<std::string>();
      if (name == "adiabatic") {
        cfg.adiabatic = true;
      } else if (name == "cptp") {
        cfg.cptp = true;
      } else if (name == "simplified") {
        cfg.simplified = true;
      } else {
        throw ValidationError("sweep: unknown bound '" + name + "'");
      }
    }
  }
  cfg.cptp_constants = j.value("cptp_constants", cfg.cptp_constants);
  if (j.contains("output")) cfg.output = resolve(base_dir, j.at("output").get<std::string>());
  if (j.contains("summary")) cfg.summary = resolve(base_dir, j.at("summary").get<std::string>());
  cfg.seed = j.value("seed", cfg.seed);
  cfg.validate();
  return cfg;
}

std::pair<ComplexMatrix, ComplexMatrix> sweep_generators(const SweepConfig& cfg) {
  switch (cfg.model) {
    case SweepConfig::Model::three_level: {
      const auto gen = three_level_generators(cfg.params);
      return {gen.D_super.mat, gen.L_super.mat};
    }
    case SweepConfig::Model::dephasing_qubit: {
      const auto ex = dephasing_qubit_example(cfg.qubit_Omega, cfg.qubit_kappa);
      return {ComplexMatrix(-kI * commutator(ex.system.hamiltonian)), ex.L_super.mat};
    }
    case SweepConfig::Model::files:
      return {load_generator(cfg.strong_path), load_generator(cfg.weak_path)};
  }
  throw ValidationError("sweep: unknown model");
}

BoundInputs caption_bound_inputs(const BoundInputs& measured, double kappa) {
  BoundInputs in = measured;
  in.M = in.M_cptp = std::sqrt(2.0);
  in.p_coeffs = {std::sqrt(2.0)};
  in.eta = kappa / 2.0;
  return in;
}

SweepResult run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const auto clock_start = std::chrono::steady_clock::now();
  const auto [B, C] = sweep_generators(cfg);
  const ZenoSplit split = zeno_split(B, C);
  const auto times = cfg.t_grid.points();
  const double t_max = *std::max_element(times.begin(), times.end());
  const BoundInputs measured = estimate_bound_inputs(split, t_max, cfg.gamma_grid.back());
  const bool caption_available = cfg.model == SweepConfig::Model::three_level;
  const BoundInputs caption =
      caption_available ? caption_bound_inputs(measured, cfg.params.kappa) : measured;
  const bool use_caption = cfg.cptp_constants == "caption";
  const BoundInputs& cptp_main = use_caption ? caption : measured;
  const BoundInputs& cptp_alt = use_caption ? measured : caption;

  const std::size_t nt = times.size();
  SweepResult result;
  result.rows.resize(cfg.gamma_grid.size() * nt);
  parallel_for(result.rows.size(), [&](std::size_t idx) {
    SweepRow& row = result.rows[idx];
    row.gamma = cfg.gamma_grid[idx / nt];
    row.t = times[idx % nt];
    row.error_plain = adiabatic_error(split, row.gamma, row.t, ErrorVariant::plain);
    row.error_peripheral = adiabatic_error(split, row.gamma, row.t, ErrorVariant::peripheral);
    row.bound_adiabatic = bound_adiabatic(measured, row.gamma, row.t);
    row.bound_cptp = bound_cptp(cptp_main, row.gamma, row.t);
    row.bound_simplified = bound_simplified(measured, row.gamma, row.t);
    row.bound_cptp_alt = caption_available ? bound_cptp(cptp_alt, row.gamma, row.t) : NAN;
  });

  json& s = result.summary;
  s["points"] = result.rows.size();
  s["cptp_constants"] = cfg.cptp_constants;
  s["seed"] = cfg.seed;
  s["constants"] = inputs_json(measured);

  const bool use_peripheral = cfg.peripheral;
  s["slope_variant"] = use_peripheral ? "peripheral" : "plain";
  std::vector<std::pair<double, double>> sup;
  json sups = json::array();
  for (std::size_t g = 0; g < cfg.gamma_grid.size(); ++g) {
    double ep = 0.0, epl = 0.0;
    for (std::size_t k = 0; k < nt; ++k) {
      ep = std::max(ep, result.rows[g * nt + k].error_peripheral);
      epl = std::max(epl, result.rows[g * nt + k].error_plain);
    }
    sup.emplace_back(cfg.gamma_grid[g], use_peripheral ? ep : epl);
    sups.push_back({{"gamma", cfg.gamma_grid[g]}, {"plain", epl}, {"peripheral", ep}});
  }
  s["sup_errors"] = sups;
  json slope;
  try {
    slope["top_half"] = fit_json(convergence_slope_top_half(sup));
  } catch (const DegenerateData& e) {
    slope["top_half"] = nullptr;
    slope["notice"] = std::string("slope fit refused: ") + e.what();
  }
  try {
    slope["full"] = fit_json(convergence_slope(sup));
  } catch (const DegenerateData& e) {
    slope["full"] = nullptr;
    slope["notice"] = std::string("slope fit refused: ") + e.what();
  }
  s["slope"] = slope;

  // Bounds are statements about the peripheral error.
  auto audit = [&](auto field) {
    double worst = -std::numeric_limits<double>::infinity();
    int count = 0;
    for (const auto& r : result.rows) {
      const double slack = r.error_peripheral - field(r);
      worst = std::max(worst, std::isnan(slack) ? -std::numeric_limits<double>::infinity() : slack);
      if (slack > kSlack) ++count;
    }
    return json{{"max_violation", number(worst)}, {"violations", count}};
  };
  json bounds;
  if (cfg.adiabatic) bounds["bound_adiabatic"] = audit([](const SweepRow& r) { return r.bound_adiabatic; });
  if (cfg.cptp) {
    bounds["bound_cptp"] = audit([](const SweepRow& r) { return r.bound_cptp; });
    if (caption_available) {
      bounds[use_caption ? "bound_cptp_measured" : "bound_cptp_caption"] =
          audit([](const SweepRow& r) { return r.bound_cptp_alt; });
    }
  }
  if (cfg.simplified) {
    bounds["bound_simplified"] = audit([](const SweepRow& r) { return r.bound_simplified; });
  }
  s["bounds"] = bounds;
  if (measured.normC == 0.0) s["notice"] = "weak generator is zero; errors vanish identically";
  s["wall_clock_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
  return result;
}

std::string sweep_csv(const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
  std::string out = "gamma,t,error_plain,error_peripheral,bound_adiabatic,bound_cptp,bound_simplified\n";
  char buf[64];
  auto cell = [&](bool on, double v, bool last = false) {
    if (on) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
    }
    out += last ? '\n' : ',';
  };
  for (const auto& r : rows) {
    cell(true, r.gamma);
    cell(true, r.t);
    cell(cfg.plain, r.error_plain);
    cell(cfg.peripheral, r.error_peripheral);
    cell(cfg.adiabatic, r.bound_adiabatic);
    cell(cfg.cptp, r.bound_cptp);
    cell(cfg.simplified, r.bound_simplified, true);
  }
  return out;
}

SpectralPropertyReport spectral_property_check(const Superoperator& generator) {
  SpectralPropertyReport r;
  const ComplexMatrix& g = generator.mat;
  SpectralDecomposition dec;
  try {
    dec = decompose(g);
  } catch (const Error& e) {
    r.note = e.what();
    return r;
  }
  r.max_real_part = -std::numeric_limits<double>::infinity();
  r.peripheral_semisimple = true;
  for (const auto& c : dec.clusters) {
    r.max_real_part = std::max(r.max_real_part, c.eigenvalue.real());
    if (std::abs(c.eigenvalue) <= std::max(dec.cluster_tol, dec.imag_tol)) r.zero_eigenvalue = true;
    if (c.peripheral && spectral_norm(c.nilpotent) > 100.0 * dec.cluster_tol) {
      r.peripheral_semisimple = false;
    }
  }
  r.left_half_plane = r.max_real_part <= dec.imag_tol;

  const ComplexMatrix p = peripheral_projection(dec);
  const Eigen::Index d = generator.d;
  r.projection_cptp = cptp_check({d, p, Provenance::projected}).ok();
  r.projection_commutes =
      spectral_norm(ComplexMatrix(g * p - p * g)) <= 1e-8 * std::max(1.0, spectral_norm(g));
  r.peripheral_maps_cptp = true;
  const ComplexMatrix gp = g * p;
  for (double t : {-1.0, 1.0}) {
    const ComplexMatrix map = expm(gp, t) * p;
    r.peripheral_maps_cptp = r.peripheral_maps_cptp && cptp_check({d, map, Provenance::propagator}).ok();
  }
  return r;
}

SpectralPropertyReport spectral_property_check(const GklsSystem& sys) {
  return spectral_property_check(liouvillian(sys));
}

nlohmann::json to_json(const SpectralPropertyReport& r) {
  json j = {{"left_half_plane", r.left_half_plane},
            {"zero_eigenvalue", r.zero_eigenvalue},
            {"peripheral_semisimple", r.peripheral_semisimple},
            {"projection_cptp", r.projection_cptp},
            {"projection_commutes", r.projection_commutes},
            {"peripheral_maps_cptp", r.peripheral_maps_cptp},
            {"max_real_part", number(r.max_real_part)},
            {"ok", r.ok()}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

}  // namespace zeno
