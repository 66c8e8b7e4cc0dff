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

#include <iostream>

#include <CLI11.hpp>

#include "zeno/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite: one PASS/FAIL line per criterion"};
  std::vector<int> criteria;
  std::string out_dir = "acceptance_out";
  app.add_option("--criterion", criteria, "criteria to run (default: all)")
      ->check(CLI::Range(1, zeno::acceptance::kCriterionCount));
  app.add_option("--output-dir", out_dir, "directory for emitted datasets");
  CLI11_PARSE(app, argc, argv);

  if (criteria.empty()) {
    for (int i = 1; i <= zeno::acceptance::kCriterionCount; ++i) criteria.push_back(i);
  }
  zeno::acceptance::Options opts;
  opts.output_dir = out_dir;
  int failed = 0;
  for (int id : criteria) {
    const auto r = zeno::acceptance::run_criterion(id, opts);
    std::cout << zeno::acceptance::format(r) << std::endl;
    failed += r.passed ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
