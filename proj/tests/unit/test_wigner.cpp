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
#include <sstream>

#include <gtest/gtest.h>

#include "kpo/kpo_model.hpp"
#include "test_util.hpp"

namespace kpo {
namespace {

using testing::ThrowsKind;

constexpr double kInvPi = 0.31830988618379067;
const double kAlpha = std::sqrt(2.34);

DensityMatrix mixed_cat() {
  const ComplexVector p = cat_state(kAlpha, +1, 40).amplitudes();
  const ComplexVector m = cat_state(kAlpha, -1, 40).amplitudes();
  return DensityMatrix(0.5 * (p * p.adjoint() + m * m.adjoint()));
}

// W from the Laguerre matrix elements, independent of the recurrence.
double wigner_laguerre(const ComplexMatrix& rho, double x, double p) {
  const Complex g = Complex(x, p) / std::sqrt(2.0);
  const int d = static_cast<int>(rho.rows());
  // The displaced state needs room beyond d; 2d columns hold its support.
  const int wide = 2 * d;
  ComplexMatrix dm(d, wide);
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < wide; ++n) dm(m, n) = displacement_element(m, n, g);
  }
  const ComplexMatrix t = dm.adjoint() * rho * dm;
  double w = 0;
  for (int n = 0; n < wide; ++n) w += (n % 2 ? -1.0 : 1.0) * t(n, n).real();
  return w * kInvPi;
}

TEST(Wigner, vacuumPeak) {
  const DensityMatrix vac = DensityMatrix::pure(StateVector::basis(30, 0));
  EXPECT_NEAR(wigner_point(vac.matrix(), 0, 0), kInvPi, 1e-6);
  EXPECT_NEAR(wigner_point(vac.matrix(), 1.0, 0.0), kInvPi * std::exp(-1.0), 1e-10);
}

TEST(Wigner, oddCatNegativeCentre) {
  const DensityMatrix odd = DensityMatrix::pure(cat_state(kAlpha, -1, 40));
  EXPECT_NEAR(wigner_point(odd.matrix(), 0, 0), -kInvPi, 1e-4);
}

TEST(Wigner, evenCatLobes) {
  const ComplexMatrix rho = DensityMatrix::pure(cat_state(kAlpha, +1, 40)).matrix();
  for (double sign : {+1.0, -1.0}) {
    double best_x = 0, best_w = -1;
    // Scan the lobe side only; the central fringe of the even cat exceeds the
    // lobe height at p = 0.
    for (double x = 1.2; x <= 4.0; x += 0.002) {
      const double w = wigner_point(rho, sign * x, 0);
      if (w > best_w) {
        best_w = w;
        best_x = sign * x;
      }
    }
    EXPECT_NEAR(best_x, sign * std::sqrt(2.0) * kAlpha, 0.1);
    EXPECT_GT(std::abs(best_x), 1.25);
    EXPECT_LT(std::abs(best_x), 3.95);
  }
}

TEST(Wigner, mixedCatFringesCancel) {
  EXPECT_LE(std::abs(wigner_point(mixed_cat().matrix(), 0, 0)), 1e-4);
}

TEST(Wigner, integratesToOne) {
  WignerWindow w;
  w.resolution = 121;
  w.x_min = w.p_min = -6;
  w.x_max = w.p_max = 6;
  for (const DensityMatrix& rho :
       {DensityMatrix::pure(cat_state(kAlpha, +1, 40)), mixed_cat(),
        DensityMatrix::pure(coherent_state(Complex(1, -0.5), 40))}) {
    const WignerGrid g = wigner(rho, w);
    EXPECT_NEAR(g.integral(), 1.0, 0.02);
    EXPECT_FALSE(g.window_warning);
  }
}

TEST(Wigner, recurrenceMatchesLaguerre) {
  const ComplexMatrix rho = mixed_cat().matrix();
  for (const auto& [x, p] : {std::pair{0.0, 0.0}, {0.7, -1.3}, {2.1, 0.4}, {-3.0, 2.2}}) {
    EXPECT_NEAR(wigner_point(rho, x, p), wigner_laguerre(rho, x, p), 1e-10) << x << "," << p;
  }
}

TEST(Wigner, laguerreElementsMatchDisplacementMatrix) {
  const Complex g(0.8, -0.6);
  const ComplexMatrix d = displacement(g, 40);
  for (int m = 0; m < 8; ++m) {
    for (int n = 0; n < 8; ++n) EXPECT_LE(std::abs(displacement_element(m, n, g) - d(m, n)), 1e-10);
  }
}

TEST(Wigner, windowWarning) {
  WignerWindow w;
  w.resolution = 21;
  const WignerGrid g = wigner(coherent_state(3.0, 40), w);
  EXPECT_TRUE(g.window_warning);
  EXPECT_GT(g.boundary_max, 1e-4);
  EXPECT_FALSE(g.warning.empty());
}

TEST(Wigner, gridLayoutAndCsv) {
  WignerWindow w;
  w.resolution = 5;
  w.x_min = -1;
  w.x_max = 1;
  w.p_min = 0;
  w.p_max = 2;
  const WignerGrid g = wigner(StateVector::basis(10, 1), w);
  EXPECT_DOUBLE_EQ(g.x.front(), -1.0);
  EXPECT_DOUBLE_EQ(g.p.back(), 2.0);
  EXPECT_NEAR(g.values(2, 0), -kInvPi, 1e-12);  // Fock |1⟩ at the origin
  std::ostringstream csv;
  write_wigner_csv(g, csv);
  const std::string text = csv.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "x,p,W");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 26);
}

TEST(Wigner, windowValidation) {
  WignerWindow w;
  w.resolution = 1;
  EXPECT_TRUE(ThrowsKind([&] { w.validate(); }, ErrorKind::kInvalidArgument));
  w = {};
  w.x_min = 2;
  w.x_max = 1;
  EXPECT_TRUE(ThrowsKind([&] { w.validate(); }, ErrorKind::kInvalidArgument));
}

}  // namespace
}  // namespace kpo
