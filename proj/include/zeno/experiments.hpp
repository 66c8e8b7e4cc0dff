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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zeno/gkls.hpp"
#include "zeno/models.hpp"
#include "zeno/zeno.hpp"

namespace zeno {

/// Worker count from ZENO_LIMITS_THREADS, else hardware concurrency.
unsigned worker_count();

/// Runs fn(i) for i in [0, n) on worker_count() threads. Callers write into
/// per-index slots, so results never depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

struct TimeGrid {
  double start = 0.25;
  double stop = 2.0;
  int count = 64;
  enum class Spacing { linear, log } spacing = Spacing::linear;

  std::vector<double> points() const;
};

/// 32 linear and 32 log-spaced points on [start, stop], sorted.
std::vector<double> mixed_time_grid(double start, double stop, int half = 32);

struct SweepConfig {
  enum class Model { three_level, dephasing_qubit, files } model = Model::three_level;
  ThreeLevelParams params;
  double qubit_Omega = 1.0;
  double qubit_kappa = 1.0;
  std::filesystem::path strong_path, weak_path;
  std::vector<double> gamma_grid{10, 30, 100, 300, 1000};
  TimeGrid t_grid;
  bool plain = true, peripheral = true;
  bool adiabatic = true, cptp = true, simplified = true;
  /// "measured" or "caption" (M = √2, p = √2, η = κ/2; three-level only).
  std::string cptp_constants = "measured";
  std::filesystem::path output = "sweep.csv";
  std::filesystem::path summary;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Parses a config object; relative paths resolve against base_dir.
SweepConfig sweep_config_from_json(const nlohmann::json& j,
                                   const std::filesystem::path& base_dir = {});

struct SweepRow {
  double gamma = 0.0, t = 0.0;
  double error_plain = 0.0, error_peripheral = 0.0;
  double bound_adiabatic = 0.0, bound_cptp = 0.0, bound_simplified = 0.0;
  double bound_cptp_alt = 0.0;  ///< the CPTP bound under the other constant set
};

struct SweepResult {
  std::vector<SweepRow> rows;  ///< ordered by (gamma, t)
  nlohmann::json summary;
};

/// Strong and weak generators for a configured model.
std::pair<ComplexMatrix, ComplexMatrix> sweep_generators(const SweepConfig& cfg);

/// Caption constants M = √2, p(s) = √2, η = κ/2 on top of measured norms.
BoundInputs caption_bound_inputs(const BoundInputs& measured, double kappa);

SweepResult run_sweep(const SweepConfig& cfg);

/// Frozen column order: gamma, t, error_plain, error_peripheral,
/// bound_adiabatic, bound_cptp, bound_simplified. Unrequested columns are empty.
std::string sweep_csv(const SweepConfig& cfg, const std::vector<SweepRow>& rows);

struct SpectralPropertyReport {
  bool left_half_plane = false;
  bool zero_eigenvalue = false;
  bool peripheral_semisimple = false;
  bool projection_cptp = false;
  bool projection_commutes = false;
  bool peripheral_maps_cptp = false;
  double max_real_part = 0.0;
  std::string note;

  bool ok() const {
    return left_half_plane && zero_eigenvalue && peripheral_semisimple && projection_cptp &&
           projection_commutes && peripheral_maps_cptp;
  }
};

SpectralPropertyReport spectral_property_check(const Superoperator& generator);
SpectralPropertyReport spectral_property_check(const GklsSystem& sys);

nlohmann::json to_json(const SpectralPropertyReport& r);

}  // namespace zeno
