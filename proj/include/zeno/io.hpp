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

#include <json.hpp>

#include "zeno/core.hpp"
#include "zeno/gkls.hpp"
#include "zeno/models.hpp"
#include "zeno/spectral.hpp"
#include "zeno/zeno.hpp"

namespace zeno::io {

using json = nlohmann::json;

/// {"rows": n, "cols": m, "data": [[re, im], ...]}, row-major.
json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

/// {"d": n, "H": matrix, "jumps": [matrix, ...]}
json to_json(const GklsSystem& sys);
GklsSystem system_from_json(const json& j);

/// {"d", "provenance", "vectorization": "column-stacking", "matrix"}. A bare
/// matrix object is also accepted on input.
json to_json(const Superoperator& s);
Superoperator superoperator_from_json(const json& j);

json to_json(const SpectralDecomposition& dec, const GapData& gaps);

/// Stores B, C and the tolerances; loading recomputes the split from them.
json to_json(const ZenoSplit& split);
ZenoSplit split_from_json(const json& j);

json to_json(const ThreeLevelParams& p);
ThreeLevelParams params_from_json(const json& j);

json read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const json& j);

}  // namespace zeno::io
