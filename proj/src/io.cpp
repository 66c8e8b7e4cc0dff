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

#include "zeno/io.hpp"

#include <cmath>
#include <fstream>

#include "zeno/errors.hpp"

namespace zeno::io {
namespace {

json complex_pair(Complex z) { return json::array({z.real(), z.imag()}); }

json gaps_json(const GapData& g) {
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json("inf"); };
  return {{"eta", num(g.eta)}, {"delta", num(g.delta)}, {"nu", g.nu}};
}

}  // namespace

json to_json(const ComplexMatrix& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(complex_pair(m(i, j)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
    throw ValidationError("matrix JSON needs rows, cols and data");
  }
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (rows <= 0 || cols <= 0) throw ValidationError("matrix JSON: rows and cols must be positive");
  if (!data.is_array() || Eigen::Index(data.size()) != rows * cols) {
    throw DimensionError("matrix JSON: data holds " + std::to_string(data.size()) +
                         " entries, expected " + std::to_string(rows * cols));
  }
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index k = 0; k < cols; ++k) {
      const auto& e = data.at(std::size_t(i * cols + k));
      Complex z;
      if (e.is_number()) {
        z = e.get<double>();
      } else if (e.is_array() && e.size() == 2) {
        z = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw ValidationError("matrix JSON: entries must be [re, im] pairs");
      }
      m(i, k) = z;
    }
  }
  if (!all_finite(m)) throw ValidationError("matrix JSON: entries must be finite");
  return m;
}

json to_json(const GklsSystem& sys) {
  json jumps = json::array();
  for (const auto& l : sys.jumps) jumps.push_back(to_json(l));
  return {{"d", sys.d}, {"H", to_json(sys.hamiltonian)}, {"jumps", std::move(jumps)}};
}

GklsSystem system_from_json(const json& j) {
  GklsSystem sys;
  sys.d = j.at("d").get<Eigen::Index>();
  sys.hamiltonian = matrix_from_json(j.at("H"));
  if (j.contains("jumps")) {
    for (const auto& l : j.at("jumps")) sys.jumps.push_back(matrix_from_json(l));
  }
  validate(sys);
  return sys;
}

json to_json(const Superoperator& s) {
  return {{"d", s.d},
          {"provenance", to_string(s.provenance)},
          {"vectorization", "column-stacking"},
          {"matrix", to_json(s.mat)}};
}

Superoperator superoperator_from_json(const json& j) {
  Superoperator s;
  if (j.contains("matrix")) {
    s.mat = matrix_from_json(j.at("matrix"));
    if (j.contains("vectorization") && j.at("vectorization") != "column-stacking") {
      throw ValidationError("superoperator JSON: only column-stacking vectorization is supported");
    }
    if (j.contains("provenance")) s.provenance = provenance_from_string(j.at("provenance"));
  } else {
    s.mat = matrix_from_json(j);
  }
  require_square(s.mat, "superoperator JSON");
  const auto d = Eigen::Index(std::llround(std::sqrt(double(s.mat.rows()))));
  if (d * d != s.mat.rows()) throw DimensionError("superoperator JSON: size is not a square d^2");
  if (j.contains("d") && j.at("d").get<Eigen::Index>() != d) {
    throw DimensionError("superoperator JSON: d does not match the matrix size");
  }
  s.d = d;
  return s;
}

json to_json(const SpectralDecomposition& dec, const GapData& gaps) {
  json clusters = json::array();
  for (const auto& c : dec.clusters) {
    clusters.push_back({{"eigenvalue", complex_pair(c.eigenvalue)},
                        {"multiplicity", c.multiplicity},
                        {"index", c.index},
                        {"semisimple", c.semisimple},
                        {"peripheral", c.peripheral},
                        {"projection", to_json(c.projection)},
                        {"nilpotent", to_json(c.nilpotent)}});
  }
  return {{"dimension", dec.dimension},
          {"cluster_tol", dec.cluster_tol},
          {"imag_tol", dec.imag_tol},
          {"clusters", std::move(clusters)},
          {"gaps", gaps_json(gaps)}};
}

json to_json(const ZenoSplit& split) {
  json eig = json::array();
  for (const auto& c : split.decB.clusters) eig.push_back(complex_pair(c.eigenvalue));
  return {{"B", to_json(split.B)},
          {"C", to_json(split.C)},
          {"cluster_tol", split.decB.cluster_tol},
          {"imag_tol", split.decB.imag_tol},
          {"C_Z", to_json(split.C_Z)},
          {"P_phi", to_json(split.P_phi)},
          {"eigenvalues", std::move(eig)},
          {"peripheral_clusters", split.decB.peripheral_indices()},
          {"gaps", gaps_json(split.gaps)}};
}

ZenoSplit split_from_json(const json& j) {
  DecomposeOptions opts;
  if (j.contains("cluster_tol")) opts.cluster_tol = j.at("cluster_tol").get<double>();
  if (j.contains("imag_tol")) opts.imag_tol = j.at("imag_tol").get<double>();
  return zeno_split(matrix_from_json(j.at("B")), matrix_from_json(j.at("C")), opts);
}

json to_json(const ThreeLevelParams& p) {
  return {{"Omega0", p.Omega0}, {"Omega1", p.Omega1}, {"Omega2", p.Omega2}, {"Gamma", p.Gamma},
          {"g", p.g},           {"omega2", p.omega2}, {"kappa", p.kappa}};
}

ThreeLevelParams params_from_json(const json& j) {
  ThreeLevelParams p;
  auto field = [&](const char* name, double& slot) {
    if (j.contains(name)) slot = j.at(name).get<double>();
  };
  field("Omega0", p.Omega0);
  field("Omega1", p.Omega1);
  field("Omega2", p.Omega2);
  field("Gamma", p.Gamma);
  field("g", p.g);
  field("omega2", p.omega2);
  field("kappa", p.kappa);
  p.validate();
  return p;
}

json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace zeno::io
