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

#include "kpo/integrator.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "kpo/linalg.hpp"
#include "test_util.hpp"

namespace kpo {
namespace {

using testing::ThrowsKind;

ComplexMatrix random_hermitian(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
  }
  return (m + m.adjoint()) / 2.0;
}

MatrixRhs schrodinger(const ComplexMatrix& h) {
  return [h](double, const ComplexMatrix& y, ComplexMatrix& dy) { dy.noalias() = -kI * (h * y); };
}

TEST(Integrator, adaptiveMatchesExactPropagator) {
  const ComplexMatrix h = random_hermitian(8, 3);
  const ComplexMatrix y0 = ComplexMatrix::Identity(8, 8);
  IntegratorStats stats;
  const ComplexMatrix y = integrate(schrodinger(h), y0, 0.0, 3.0, EvolutionConfig{}, 0.1, &stats);
  EXPECT_LE(max_abs(y - unitary_propagator(h, 3.0)), 1e-7);
  EXPECT_GT(stats.accepted, 0);
  EXPECT_EQ(stats.rhs_evaluations >= 6 * stats.accepted, true);
  EXPECT_LE(stats.largest_step, 0.1 + 1e-15);
}

TEST(Integrator, fixedRk4FourthOrder) {
  const ComplexMatrix h = random_hermitian(4, 5);
  const ComplexMatrix exact = unitary_propagator(h, 2.0);
  EvolutionConfig cfg;
  cfg.method = IntegratorMethod::kFixedRk4;
  double previous = 0.0;
  for (double dt : {0.04, 0.02, 0.01}) {
    cfg.max_step = dt;
    IntegratorStats s;
    const double err = max_abs(integrate(schrodinger(h), ComplexMatrix::Identity(4, 4), 0, 2.0, cfg, 1, &s) - exact);
    EXPECT_EQ(s.accepted, static_cast<std::int64_t>(std::llround(2.0 / dt)));
    if (previous > 0.0) {
      EXPECT_NEAR(previous / err, 16.0, 2.5);
    }
    previous = err;
  }
}

TEST(Integrator, fixedStepIsBitwiseRepeatable) {
  const ComplexMatrix h = random_hermitian(6, 9);
  EvolutionConfig cfg;
  cfg.method = IntegratorMethod::kFixedRk4;
  cfg.max_step = 0.013;
  const ComplexMatrix a = integrate(schrodinger(h), ComplexMatrix::Identity(6, 6), 0, 1.7, cfg, 1);
  const ComplexMatrix b = integrate(schrodinger(h), ComplexMatrix::Identity(6, 6), 0, 1.7, cfg, 1);
  EXPECT_EQ((a - b).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Integrator, timeDependentScalarOracle) {
  // dy/dt = i cos(t) y  ⇒  y = exp(i sin t).
  const MatrixRhs rhs = [](double t, const ComplexMatrix& y, ComplexMatrix& dy) {
    dy = kI * std::cos(t) * y;
  };
  const ComplexMatrix y = integrate(rhs, ComplexMatrix::Ones(1, 1), 0, 10, EvolutionConfig{}, 0.5);
  EXPECT_LE(std::abs(y(0, 0) - std::exp(kI * std::sin(10.0))), 1e-7);
}

TEST(Integrator, stiffnessDetected) {
  const MatrixRhs stiff = [](double, const ComplexMatrix& y, ComplexMatrix& dy) { dy = -1e18 * y; };
  EXPECT_TRUE(ThrowsKind([&] { integrate(stiff, ComplexMatrix::Ones(1, 1), 0, 1, EvolutionConfig{}, 1); },
                         ErrorKind::kStiffness));
  EvolutionConfig tight;
  tight.max_steps = 10;
  const ComplexMatrix h = random_hermitian(3, 1);
  EXPECT_TRUE(ThrowsKind([&] { integrate(schrodinger(h), ComplexMatrix::Identity(3, 3), 0, 100, tight, 0.01); },
                         ErrorKind::kStiffness));
}

TEST(Integrator, nonFiniteStateIsFailure) {
  const MatrixRhs bad = [](double t, const ComplexMatrix& y, ComplexMatrix& dy) {
    dy = y;
    if (t > 0.5) dy(0, 0) = std::numeric_limits<double>::quiet_NaN();
  };
  EXPECT_TRUE(ThrowsKind([&] { integrate(bad, ComplexMatrix::Ones(1, 1), 0, 1, EvolutionConfig{}, 0.1); },
                         ErrorKind::kIntegratorFailure));
}

TEST(Integrator, configValidation) {
  EvolutionConfig c;
  c.rel_tol = 0;
  EXPECT_TRUE(ThrowsKind([&] { c.validate(); }, ErrorKind::kInvalidArgument));
  c = {};
  c.max_step = -1.0;
  EXPECT_TRUE(ThrowsKind([&] { c.validate(); }, ErrorKind::kInvalidArgument));
  const ComplexMatrix h = random_hermitian(2, 2);
  EXPECT_TRUE(ThrowsKind([&] { integrate(schrodinger(h), ComplexMatrix::Identity(2, 2), 1, 1, EvolutionConfig{}, 1); },
                         ErrorKind::kInvalidArgument));
}

TEST(IntegratorStats, merge) {
  IntegratorStats a{10, 2, 70, 0.01, 0.2};
  const IntegratorStats b{5, 1, 36, 0.005, 0.1};
  a.merge(b);
  EXPECT_EQ(a.accepted, 15);
  EXPECT_EQ(a.rejected, 3);
  EXPECT_EQ(a.rhs_evaluations, 106);
  EXPECT_DOUBLE_EQ(a.smallest_step, 0.005);
  EXPECT_DOUBLE_EQ(a.largest_step, 0.2);
}

}  // namespace
}  // namespace kpo
