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

#include "kpo/wigner.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "kpo/error.hpp"

namespace kpo {

namespace {

constexpr double kInvPi = 0.31830988618379067154;

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    v[static_cast<std::size_t>(i)] =
        n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return v;
}

// Columns n of the returned matrix are D(γ)|n⟩, built from
// D(γ)|n⟩ = (a† − γ*) D(γ)|n−1⟩ / √n starting at the coherent state.
ComplexMatrix displaced_number_states(Complex gamma, Eigen::Index d) {
  ComplexMatrix v(d, d);
  v(0, 0) = std::exp(-0.5 * std::norm(gamma));
  for (Eigen::Index m = 1; m < d; ++m) {
    v(m, 0) = v(m - 1, 0) * gamma / std::sqrt(static_cast<double>(m));
  }
  const Complex gc = std::conj(gamma);
  for (Eigen::Index n = 1; n < d; ++n) {
    const double inv = 1.0 / std::sqrt(static_cast<double>(n));
    v(0, n) = -gc * v(0, n - 1) * inv;
    for (Eigen::Index m = 1; m < d; ++m) {
      v(m, n) = (std::sqrt(static_cast<double>(m)) * v(m - 1, n - 1) - gc * v(m, n - 1)) * inv;
    }
  }
  return v;
}

double wigner_value(const ComplexMatrix& rho, double x, double p) {
  const Complex gamma = std::sqrt(2.0) * Complex(x, p);
  const ComplexMatrix v = displaced_number_states(gamma, rho.rows());
  double acc = 0.0;
  for (Eigen::Index n = 0; n < rho.rows(); ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    acc += sign * (rho.row(n) * v.col(n)).value().real();
  }
  return kInvPi * acc;
}

}  // namespace

void WignerWindow::validate() const {
  if (!(x_max > x_min) || !(p_max > p_min)) {
    throw Error(ErrorKind::kInvalidArgument, "Wigner window bounds must be increasing");
  }
  if (resolution < 2) throw Error(ErrorKind::kInvalidArgument, "Wigner resolution must be ≥ 2");
}

double WignerGrid::cell_area() const {
  if (x.size() < 2 || p.size() < 2) return 0.0;
  return (x[1] - x[0]) * (p[1] - p[0]);
}

double WignerGrid::integral() const { return values.sum() * cell_area(); }

Complex displacement_element(int m, int n, Complex gamma) {
  if (m < 0 || n < 0) throw Error(ErrorKind::kInvalidArgument, "Fock indices must be ≥ 0");
  const double r2 = std::norm(gamma);
  const int lo = std::min(m, n);
  const int k = std::abs(m - n);
  const Complex base = m >= n ? gamma : -std::conj(gamma);
  const double log_mag = 0.5 * (std::lgamma(lo + 1.0) - std::lgamma(lo + k + 1.0)) - 0.5 * r2;
  const double lag = std::assoc_laguerre(static_cast<unsigned>(lo), static_cast<unsigned>(k), r2);
  return std::exp(log_mag) * std::pow(base, k) * lag;
}

double wigner_point(const ComplexMatrix& rho, double x, double p) {
  if (rho.rows() != rho.cols()) throw Error(ErrorKind::kInvalidDimension, "ρ must be square");
  return wigner_value(rho, x, p);
}

WignerGrid wigner(const DensityMatrix& rho, const WignerWindow& window) {
  window.validate();
  WignerGrid g;
  g.x = linspace(window.x_min, window.x_max, window.resolution);
  g.p = linspace(window.p_min, window.p_max, window.resolution);
  const auto n = static_cast<Eigen::Index>(window.resolution);
  g.values.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      g.values(i, j) = wigner_value(rho.matrix(), g.x[static_cast<std::size_t>(i)],
                                    g.p[static_cast<std::size_t>(j)]);
    }
  }
  double edge = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    edge = std::max({edge, std::abs(g.values(i, 0)), std::abs(g.values(i, n - 1)),
                     std::abs(g.values(0, i)), std::abs(g.values(n - 1, i))});
  }
  g.boundary_max = edge;
  if (edge > 1e-4) {
    g.window_warning = true;
    g.warning = "boundary |W| = " + std::to_string(edge) +
                " exceeds 1e-4; window too small for the state";
  }
  return g;
}

WignerGrid wigner(const StateVector& psi, const WignerWindow& window) {
  return wigner(DensityMatrix::pure(psi), window);
}

void write_wigner_csv(const WignerGrid& grid, std::ostream& out) {
  out << "x,p,W\n";
  char buf[128];
  for (std::size_t i = 0; i < grid.x.size(); ++i) {
    for (std::size_t j = 0; j < grid.p.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", grid.x[i], grid.p[j],
                    grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      out << buf;
    }
  }
}

}  // namespace kpo
