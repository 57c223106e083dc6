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

// Wigner quasi-probability on a rectangular (x, p) window, with
// x = (a + a†)/√2, p = (a − a†)/(i√2) and β = (x + ip)/√2:
//
//   W(x, p) = (1/π) tr[ρ D(2β) Π],  ∬ W dx dp = 1.

#include <iosfwd>
#include <string>
#include <vector>

#include "kpo/linalg.hpp"

namespace kpo {

struct WignerWindow {
  double x_min = -5.0;
  double x_max = 5.0;
  double p_min = -5.0;
  double p_max = 5.0;
  int resolution = 101;  // points per axis

  void validate() const;
};

struct WignerGrid {
  std::vector<double> x;
  std::vector<double> p;
  Eigen::MatrixXd values;  // values(i, j) = W(x[i], p[j])
  double boundary_max = 0.0;
  bool window_warning = false;
  std::string warning;

  double cell_area() const;
  /// Trapezoid-free Riemann sum: Σ W × cell area.
  double integral() const;
};

/// ⟨m|D(γ)|n⟩ from the associated-Laguerre closed form.
Complex displacement_element(int m, int n, Complex gamma);

double wigner_point(const ComplexMatrix& rho, double x, double p);

WignerGrid wigner(const DensityMatrix& rho, const WignerWindow& window = {});
WignerGrid wigner(const StateVector& psi, const WignerWindow& window = {});

/// Columns x, p, W with a header row; 17 significant digits.
void write_wigner_csv(const WignerGrid& grid, std::ostream& out);

}  // namespace kpo
