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

#include <stdexcept>
#include <string>

namespace zeno {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape mismatch (non-square input, incompatible operands).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input fails a structural precondition (non-Hermitian Hamiltonian, bad config).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A dense factorization did not converge.
class FactorizationError : public Error {
 public:
  FactorizationError(const std::string& what, int iterations)
      : Error(what + " (iterations: " + std::to_string(iterations) + ")"),
        iterations_(iterations) {}
  int iterations() const noexcept { return iterations_; }

 private:
  int iterations_;
};

/// Spectral decomposition whose invariant residuals exceed the allowed slack.
class DecompositionError : public Error {
 public:
  DecompositionError(const std::string& what, double residual)
      : Error(what + " (residual: " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Strong generator has an eigenvalue in the open right half-plane.
class SpectrumViolation : public Error {
 public:
  using Error::Error;
};

/// A purely imaginary eigenvalue carries a nonzero nilpotent.
class SemisimplicityViolation : public Error {
 public:
  using Error::Error;
};

/// Operation is not defined for this class of inputs (e.g. defective matrices).
class UnsupportedInput : public Error {
 public:
  using Error::Error;
};

/// Iterative estimator failed to converge; carries the best value seen.
class EstimationError : public Error {
 public:
  EstimationError(const std::string& what, double best)
      : Error(what + " (best value: " + std::to_string(best) + ")"), best_(best) {}
  double best() const noexcept { return best_; }

 private:
  double best_;
};

/// Data cannot support the requested fit.
class DegenerateData : public Error {
 public:
  using Error::Error;
};

}  // namespace zeno
