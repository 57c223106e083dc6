// Copyright 2026 The kpoholo Authors
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

// Explicit Runge-Kutta propagation of matrix-valued ODEs dy/dt = f(t, y).
// States are stored as ComplexMatrix so that a bundle of kets (one per
// column) or a density matrix can be carried through the same code.

#include <cstdint>
#include <functional>
#include <optional>

#include "kpo/linalg.hpp"

namespace kpo {

enum class IntegratorMethod { kFixedRk4, kDormandPrince45 };

struct EvolutionConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  /// Unset means "pick a default": the gate simulators use 0.02/Ω, the bare
  /// evolve_* entry points use (t1 − t0)/100.
  std::optional<double> max_step;
  IntegratorMethod method = IntegratorMethod::kDormandPrince45;
  /// Adaptive mode: abort with kStiffness when the step falls below this
  /// fraction of the interval.
  double min_step_fraction = 1e-14;
  std::int64_t max_steps = 50'000'000;

  void validate() const;
};

struct IntegratorStats {
  std::int64_t accepted = 0;
  std::int64_t rejected = 0;
  std::int64_t rhs_evaluations = 0;
  double smallest_step = 0.0;
  double largest_step = 0.0;

  void merge(const IntegratorStats& other);
};

/// Writes f(t, y) into dy. dy has the shape of y on entry.
using MatrixRhs = std::function<void(double t, const ComplexMatrix& y, ComplexMatrix& dy)>;

/// Integrates from t0 to t1 (t1 > t0). `default_max_step` is used when
/// cfg.max_step is unset.
ComplexMatrix integrate(const MatrixRhs& rhs, ComplexMatrix y0, double t0, double t1,
                        const EvolutionConfig& cfg, double default_max_step,
                        IntegratorStats* stats = nullptr);

}  // namespace kpo
