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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "zeno/acceptance.hpp"
#include "zeno/errors.hpp"
#include "zeno/experiments.hpp"
#include "zeno/io.hpp"

namespace {

using zeno::io::json;

// Bare matrix JSON, or any object wrapping one under "matrix".
zeno::ComplexMatrix load_matrix(const std::string& path) {
  const auto j = zeno::io::read_file(path);
  return zeno::io::matrix_from_json(j.contains("matrix") ? j.at("matrix") : j);
}

void emit(const json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    zeno::io::write_file(path, j);
  }
}

void emit_text(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(path);
    if (!out) throw zeno::Error("cannot write " + path);
    out << text;
  }
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stod(item));
  if (out.empty()) throw zeno::ValidationError("empty list '" + s + "'");
  return out;
}

// start:stop:count, linearly spaced.
std::vector<double> parse_range(const std::string& s) {
  double a = 0, b = 0;
  int n = 0;
  char c1 = 0, c2 = 0;
  std::stringstream in(s);
  if (!(in >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1) {
    throw zeno::ValidationError("t-grid must look like start:stop:count, got '" + s + "'");
  }
  return zeno::TimeGrid{a, b, n, zeno::TimeGrid::Spacing::linear}.points();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strong-coupling limits of GKLS dynamics"};
  app.require_subcommand(1);

  // spectral
  auto* spectral = app.add_subcommand("spectral", "Spectral decomposition of a square matrix");
  std::string spec_input, spec_output;
  std::optional<double> ctol, itol;
  spectral->add_option("--input", spec_input, "matrix JSON")->required();
  spectral->add_option("--cluster-tol", ctol, "eigenvalue merge radius");
  spectral->add_option("--imag-tol", itol, "peripheral threshold on |Re b|");
  spectral->add_option("--output", spec_output, "output JSON (stdout if omitted)");

  // gkls
  auto* gkls = app.add_subcommand("gkls", "GKLS generators and map checks");
  gkls->require_subcommand(1);
  auto* gkls_build = gkls->add_subcommand("build", "Compile a system to its superoperator");
  std::string sys_path, gkls_output;
  gkls_build->add_option("--system", sys_path, "system JSON")->required();
  gkls_build->add_option("--output", gkls_output, "output JSON (stdout if omitted)");
  auto* gkls_check = gkls->add_subcommand("check", "CPTP and GKLS-form report for a superoperator");
  std::string map_path;
  gkls_check->add_option("--map", map_path, "superoperator JSON")->required();

  // zeno
  auto* zeno_cmd = app.add_subcommand("zeno", "Zeno limits, errors and bounds");
  zeno_cmd->require_subcommand(1);
  auto* split_cmd = zeno_cmd->add_subcommand("split", "Zeno projection of a weak generator");
  std::string strong_path, weak_path, split_output;
  split_cmd->add_option("--strong", strong_path, "strong generator JSON")->required();
  split_cmd->add_option("--weak", weak_path, "weak generator JSON")->required();
  split_cmd->add_option("--cluster-tol", ctol, "eigenvalue merge radius");
  split_cmd->add_option("--imag-tol", itol, "peripheral threshold on |Re b|");
  split_cmd->add_option("--output", split_output, "output JSON (stdout if omitted)");
  auto* error_cmd = zeno_cmd->add_subcommand("error", "Distance to the adiabatic limit");
  std::string split_path, variant = "peripheral";
  double gamma = 0, t = 0;
  error_cmd->add_option("--split", split_path, "split JSON")->required();
  error_cmd->add_option("--gamma", gamma, "coupling strength")->required();
  error_cmd->add_option("--t", t, "time")->required();
  error_cmd->add_option("--variant", variant, "plain or peripheral")
      ->check(CLI::IsMember({"plain", "peripheral"}));
  auto* bounds_cmd = zeno_cmd->add_subcommand("bounds", "Errors and bounds over a grid, as CSV");
  std::string gamma_grid = "10,30,100,300,1000", t_grid = "0.25:2:64", bounds_output;
  bounds_cmd->add_option("--split", split_path, "split JSON")->required();
  bounds_cmd->add_option("--gamma-grid", gamma_grid, "comma-separated gamma values");
  bounds_cmd->add_option("--t-grid", t_grid, "start:stop:count");
  bounds_cmd->add_option("--output", bounds_output, "output CSV (stdout if omitted)");

  // model
  auto* model = app.add_subcommand("model", "Built-in models");
  model->require_subcommand(1);
  auto* three = model->add_subcommand("three-level", "Three-level strong damping model");
  std::string params_path, emit_what = "generators", model_output;
  double model_t = 1.0;
  three->add_option("--params", params_path, "parameter JSON");
  three->add_option("--emit", emit_what, "generators, analytic, peripheral or zeno")
      ->check(CLI::IsMember({"generators", "analytic", "peripheral", "zeno"}));
  three->add_option("--t", model_t, "time for the analytic propagator");
  three->add_option("--output", model_output, "output JSON (stdout if omitted)");
  auto* qubit = model->add_subcommand("dephasing-qubit", "Dephasing qubit under fast oscillations");
  std::string qubit_emit = "all";
  double omega = 1.0, kappa = 1.0;
  qubit->add_option("--emit", qubit_emit, "all, system, zeno or nongkls")
      ->check(CLI::IsMember({"all", "system", "zeno", "nongkls"}));
  qubit->add_option("--omega", omega, "level splitting");
  qubit->add_option("--kappa", kappa, "dephasing rate");
  qubit->add_option("--output", model_output, "output JSON (stdout if omitted)");

  // sweep, check-spectral, acceptance
  auto* sweep = app.add_subcommand("sweep", "Config-driven gamma/t sweep");
  std::string config_path;
  sweep->add_option("--config", config_path, "sweep config JSON")->required();
  auto* check_spectral = app.add_subcommand("check-spectral", "Spectral properties of a GKLS system");
  check_spectral->add_option("--system", sys_path, "system JSON")->required();
  auto* acceptance = app.add_subcommand("acceptance", "Run the acceptance suite");
  std::string accept_dir = "acceptance_out";
  std::vector<int> criteria;
  acceptance->add_option("--output-dir", accept_dir, "directory for emitted datasets");
  acceptance->add_option("--criterion", criteria, "run only these criteria");

  CLI11_PARSE(app, argc, argv);

  zeno::DecomposeOptions dopts;
  dopts.cluster_tol = ctol;
  dopts.imag_tol = itol;

  try {
    if (*spectral) {
      const auto a = load_matrix(spec_input);
      const auto dec = zeno::decompose(a, dopts);
      emit(zeno::io::to_json(dec, zeno::gaps(dec)), spec_output);
    } else if (*gkls_build) {
      const auto sys = zeno::io::system_from_json(zeno::io::read_file(sys_path));
      emit(zeno::io::to_json(zeno::liouvillian(sys)), gkls_output);
    } else if (*gkls_check) {
      const auto e = zeno::io::superoperator_from_json(zeno::io::read_file(map_path));
      const auto c = zeno::cptp_check(e);
      const auto g = zeno::gkls_form_check(e);
      emit({{"provenance", zeno::to_string(e.provenance)},
            {"cptp",
             {{"trace_preserving", c.trace_preserving},
              {"hermiticity_preserving", c.hermiticity_preserving},
              {"completely_positive", c.completely_positive},
              {"min_choi_eigenvalue", c.min_choi_eigenvalue},
              {"ok", c.ok()}}},
            {"gkls_form",
             {{"trace_annihilating", g.trace_annihilating},
              {"hermiticity_preserving", g.hermiticity_preserving},
              {"conditionally_completely_positive", g.conditionally_completely_positive},
              {"min_conditional_eigenvalue", g.min_conditional_eigenvalue},
              {"ok", g.ok()}}}},
           "");
    } else if (*split_cmd) {
      const auto split =
          zeno::zeno_split(load_matrix(strong_path), load_matrix(weak_path), dopts);
      emit(zeno::io::to_json(split), split_output);
    } else if (*error_cmd) {
      const auto split = zeno::io::split_from_json(zeno::io::read_file(split_path));
      std::printf("%.17g\n", zeno::adiabatic_error(split, gamma, t,
                                                   zeno::error_variant_from_string(variant)));
    } else if (*bounds_cmd) {
      const auto split = zeno::io::split_from_json(zeno::io::read_file(split_path));
      const auto gammas = parse_list(gamma_grid);
      const auto times = parse_range(t_grid);
      double tmax = 0, gmax = 0;
      for (double v : times) tmax = std::max(tmax, v);
      for (double v : gammas) gmax = std::max(gmax, v);
      const auto in = zeno::estimate_bound_inputs(split, tmax, gmax);
      std::vector<zeno::SweepRow> rows(gammas.size() * times.size());
      zeno::parallel_for(rows.size(), [&](std::size_t i) {
        auto& r = rows[i];
        r.gamma = gammas[i / times.size()];
        r.t = times[i % times.size()];
        r.error_plain = zeno::adiabatic_error(split, r.gamma, r.t, zeno::ErrorVariant::plain);
        r.error_peripheral = zeno::adiabatic_error(split, r.gamma, r.t, zeno::ErrorVariant::peripheral);
        r.bound_adiabatic = zeno::bound_adiabatic(in, r.gamma, r.t);
        r.bound_cptp = zeno::bound_cptp(in, r.gamma, r.t);
        r.bound_simplified = zeno::bound_simplified(in, r.gamma, r.t);
      });
      zeno::SweepConfig all;
      emit_text(zeno::sweep_csv(all, rows), bounds_output);
    } else if (*three) {
      const auto p = params_path.empty() ? zeno::ThreeLevelParams{}
                                         : zeno::io::params_from_json(zeno::io::read_file(params_path));
      p.validate();
      json out = {{"params", zeno::io::to_json(p)}};
      if (emit_what == "generators") {
        const auto gen = zeno::three_level_generators(p);
        out["L"] = zeno::io::to_json(gen.L_super);
        out["D"] = zeno::io::to_json(gen.D_super);
      } else if (emit_what == "analytic") {
        out["t"] = model_t;
        out["propagator"] = zeno::io::to_json(zeno::three_level_analytic_propagator(p, model_t));
      } else if (emit_what == "peripheral") {
        const auto per = zeno::three_level_peripheral(p);
        out["P_phi"] = zeno::io::to_json(per.P_phi);
        out["P_0"] = zeno::io::to_json(per.P_0);
        out["P_plus"] = zeno::io::to_json(per.P_plus);
        out["P_minus"] = zeno::io::to_json(per.P_minus);
      } else {
        out["L_Z"] = zeno::io::to_json(zeno::three_level_zeno_generator(p));
      }
      emit(out, model_output);
    } else if (*qubit) {
      const auto ex = zeno::dephasing_qubit_example(omega, kappa);
      json out;
      if (qubit_emit == "all" || qubit_emit == "system") {
        out["system"] = zeno::io::to_json(ex.system);
        out["L"] = zeno::io::to_json(ex.L_super);
      }
      if (qubit_emit == "all" || qubit_emit == "zeno") out["expected_zeno"] = zeno::io::to_json(ex.expected_zeno);
      if (qubit_emit == "all" || qubit_emit == "nongkls") {
        out["expected_nonGKLS"] = zeno::io::to_json(ex.expected_nonGKLS);
      }
      emit(out, model_output);
    } else if (*sweep) {
      const std::filesystem::path cfg_path(config_path);
      const auto cfg = zeno::sweep_config_from_json(zeno::io::read_file(cfg_path), cfg_path.parent_path());
      const auto result = zeno::run_sweep(cfg);
      emit_text(zeno::sweep_csv(cfg, result.rows), cfg.output.string());
      auto summary_path = cfg.summary;
      if (summary_path.empty()) summary_path = cfg.output.string() + ".summary.json";
      zeno::io::write_file(summary_path, result.summary);
      std::cout << result.summary.dump(2) << '\n';
    } else if (*check_spectral) {
      const auto sys = zeno::io::system_from_json(zeno::io::read_file(sys_path));
      emit(zeno::to_json(zeno::spectral_property_check(sys)), "");
    } else if (*acceptance) {
      zeno::acceptance::Options opts;
      opts.output_dir = accept_dir;
      if (criteria.empty()) {
        for (int i = 1; i <= zeno::acceptance::kCriterionCount; ++i) criteria.push_back(i);
      }
      bool ok = true;
      for (int id : criteria) {
        const auto r = zeno::acceptance::run_criterion(id, opts);
        std::cout << zeno::acceptance::format(r) << std::endl;
        ok = ok && r.passed;
      }
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
