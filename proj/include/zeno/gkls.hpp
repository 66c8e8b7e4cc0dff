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
#include <string>
#include <vector>

#include "zeno/core.hpp"

namespace zeno {

/// Hamiltonian H and jump operators L_i on a d-dimensional Hilbert space.
struct GklsSystem {
  Eigen::Index d = 0;
  ComplexMatrix hamiltonian;
  std::vector<ComplexMatrix> jumps;
};

enum class Provenance { hamiltonian, dissipator, full, projected, propagator };

std::string to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);

/// d² x d² matrix acting on column-stacked d x d matrices.
struct Superoperator {
  Eigen::Index d = 0;
  ComplexMatrix mat;
  Provenance provenance = Provenance::full;

  bool is_generator() const {
    return provenance == Provenance::hamiltonian || provenance == Provenance::dissipator ||
           provenance == Provenance::full;
  }
};

/// Throws ValidationError when shapes disagree or H is not Hermitian.
void validate(const GklsSystem& sys);

/// X -> L X L^† - ½ {L^† L, X}.
ComplexMatrix dissipator(const ComplexMatrix& jump);

/// -i[H, ·] + Σ_i D[L_i].
Superoperator liouvillian(const GklsSystem& sys);

/// Shift every jump to L - (tr L / d) I and move the compensating term into H.
GklsSystem canonicalize(const GklsSystem& sys);

/// Choi matrix Σ_{mn} E(|m⟩⟨n|) ⊗ |m⟩⟨n|.
ComplexMatrix choi(const Superoperator& e);

struct CptpReport {
  bool trace_preserving = false;
  bool hermiticity_preserving = false;
  bool completely_positive = false;
  double min_choi_eigenvalue = 0.0;
  bool ok() const { return trace_preserving && hermiticity_preserving && completely_positive; }
};

CptpReport cptp_check(const Superoperator& e);

struct GklsFormReport {
  bool trace_annihilating = false;
  bool hermiticity_preserving = false;
  bool conditionally_completely_positive = false;
  /// Smallest eigenvalue of the Choi matrix projected off the maximally entangled vector.
  double min_conditional_eigenvalue = 0.0;
  bool ok() const {
    return trace_annihilating && hermiticity_preserving && conditionally_completely_positive;
  }
};

GklsFormReport gkls_form_check(const Superoperator& g);

/// 2 Σ_i tr(L_i^† L_i ρ² - L_i^† ρ L_i ρ). H never enters.
double purity_objective(const std::vector<ComplexMatrix>& jumps, const ComplexMatrix& rho);

/// -2 tr(ρ G(ρ)), the instantaneous purity loss under a generator G.
double purity_objective(const Superoperator& g, const ComplexMatrix& rho);

struct PurityOptions {
  int restarts = 32;
  int bloch_grid = 10000;
  double tol = 1e-10;
  int max_iterations = 4000;
  std::uint64_t seed = 0x5eed;
};

struct PurityRate {
  double gamma = 0.0;       ///< max of both searches
  double mixed_max = 0.0;   ///< best over the full density-matrix manifold
  double pure_max = 0.0;    ///< best over pure states (ascent plus Bloch grid for d = 2)
};

/// Largest purity decay rate Γ of the dissipative part of a canonicalized system.
PurityRate purity_decay_rate(const GklsSystem& sys, const PurityOptions& opts = {});

/// Same estimate for an arbitrary generator given as a superoperator.
PurityRate purity_decay_rate(const Superoperator& g, const PurityOptions& opts = {});

struct NoGoReport {
  double gamma_original = 0.0;
  double gamma_projected = 0.0;
  bool equal_within_tol = false;
};

/// Compares Γ of the system's generator with Γ of a projected generator.
NoGoReport no_go_check(const GklsSystem& sys, const Superoperator& zeno_generator,
                       double tol = 1e-6, const PurityOptions& opts = {});

}  // namespace zeno
