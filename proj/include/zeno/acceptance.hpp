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

#include <filesystem>
#include <string>
#include <vector>

#include "zeno/gkls.hpp"

namespace zeno::acceptance {

struct CorpusInstance {
  GklsSystem strong;
  GklsSystem weak;
};

/// Deterministic random GKLS pairs with d in {2, 3, 4}; some strong
/// generators are purely Hamiltonian.
std::vector<CorpusInstance> random_corpus(std::size_t n = 50);

struct Options {
  /// Where dataset files (CSV) are written.
  std::filesystem::path output_dir = "acceptance_out";
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

constexpr int kCriterionCount = 11;

CriterionResult run_criterion(int id, const Options& opts = {});
std::vector<CriterionResult> run_all(const Options& opts = {});

/// "PASS [3] title: detail (0.12 s)"
std::string format(const CriterionResult& r);

}  // namespace zeno::acceptance
