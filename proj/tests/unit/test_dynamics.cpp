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

#include "kpo/dynamics.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace kpo {
namespace {

using testing::ThrowsKind;

const KpoParams kWork = KpoParams::from_alpha_squared(2.34, 40);

const LogicalBasis& work_basis() {
  static const LogicalBasis b = logical_basis(kWork);
  return b;
}

const LogicalBasis& pair_basis() {
  static const LogicalBasis b = logical_basis(KpoParams::from_alpha_squared(2.34, 25));
  return b;
}

ComplexMatrix sigma_x() {
  ComplexMatrix s = ComplexMatrix::Zero(2, 2);
  s(0, 1) = s(1, 0) = 1;
  return s;
}

HamiltonianFn constant(const ComplexMatrix& h) {
  return [h](double) { return h; };
}

StateVector ket2(Complex a, Complex b) { return StateVector::normalized(Eigen::Vector2cd(a, b)); }

TEST(EvolveState, zeroHamiltonianIsIdentity) {
  const StateVector psi = ket2(0.3, Complex(0, 0.8));
  const StateVector out = evolve_state(constant(ComplexMatrix::Zero(2, 2)), psi, 0, 5, EvolutionConfig{});
  EXPECT_LE((out.amplitudes() - psi.amplitudes()).norm(), 1e-15);
}

TEST(EvolveState, rabiOscillation) {
  const double om = 0.7;
  for (double t : {0.5, 2.0, 9.3}) {
    const StateVector out =
        evolve_state(constant(0.5 * om * sigma_x()), StateVector::basis(2, 0), 0, t, EvolutionConfig{});
    EXPECT_NEAR(std::norm(out[0]), std::pow(std::cos(om * t / 2), 2), 1e-7);
    EXPECT_NEAR(std::norm(out[1]), std::pow(std::sin(om * t / 2), 2), 1e-7);
  }
}

TEST(EvolveState, selfConvergentInMaxStep) {
  const auto h = [](double t) {
    ComplexMatrix m = 0.5 * sigma_x();
    m(0, 0) = std::cos(3 * t);
    return m;
  };
  EvolutionConfig coarse;
  coarse.max_step = 0.1;
  EvolutionConfig fine = coarse;
  fine.max_step = 0.05;
  const StateVector a = evolve_state(h, StateVector::basis(2, 0), 0, 20, coarse);
  const StateVector b = evolve_state(h, StateVector::basis(2, 0), 0, 20, fine);
  EXPECT_LE((a.amplitudes() - b.amplitudes()).norm(), 1e-8);
}

TEST(EvolveState, staticKpoMatchesExponential) {
  const auto p = KpoParams::from_alpha_squared(1.0, 20);
  const ComplexMatrix h = build_kpo_hamiltonian(p);
  const StateVector psi = coherent_state(Complex(0.7, 0.2), 20);
  const StateVector out = evolve_state(constant(h), psi, 0, 3, EvolutionConfig{});
  EXPECT_LE((out.amplitudes() - unitary_propagator(h, 3.0) * psi.amplitudes()).norm(), 1e-7);
}

TEST(EvolveLindblad, zeroRatesMatchUnitary) {
  const auto p = KpoParams::from_alpha_squared(1.0, 20);
  const auto h = [&p](double t) {
    ComplexMatrix m = build_kpo_hamiltonian(p);
    m += 0.2 * std::cos(t) * (annihilation(20) + creation(20));
    return m;
  };
  const StateVector psi = coherent_state(0.4, 20);
  const StateVector out = evolve_state(h, psi, 0, 4, EvolutionConfig{});
  const DensityMatrix rho = evolve_lindblad(h, NoiseParams{}, DensityMatrix::pure(psi), 0, 4, EvolutionConfig{});
  EXPECT_LE(max_abs(rho.matrix() - DensityMatrix::pure(out).matrix()), 1e-7);
}

TEST(EvolveLindblad, coherentAmplitudeDecay) {
  const Eigen::Index d = 30;
  const double kappa = 0.2, t = 6.0;
  const Complex a0(1.5, 0.5);
  NoiseParams noise;
  noise.kappa_alpha = kappa;
  const DensityMatrix rho = evolve_lindblad(constant(ComplexMatrix::Zero(d, d)), noise,
                                            DensityMatrix::pure(coherent_state(a0, d)), 0, t,
                                            EvolutionConfig{});
  const Complex mean = (rho.matrix() * annihilation(d)).trace();
  const Complex expected = a0 * std::exp(-kappa * t / 2);
  EXPECT_LE(std::abs(mean - expected) / std::abs(expected), 1e-5);
}

TEST(EvolveLindblad, pureDephasing) {
  const Eigen::Index d = 6;
  const double kp = 0.3, t = 2.5;
  ComplexVector v = ComplexVector::Constant(d, 1.0 / std::sqrt(6.0));
  const DensityMatrix rho0 = DensityMatrix::pure(StateVector(v));
  NoiseParams noise;
  noise.kappa_phi = kp;
  const DensityMatrix rho =
      evolve_lindblad(constant(ComplexMatrix::Zero(d, d)), noise, rho0, 0, t, EvolutionConfig{});
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      const double expected = rho0.matrix()(m, n).real() * std::exp(-kp * (m - n) * (m - n) * t / 2);
      EXPECT_LE(std::abs(rho.matrix()(m, n) - expected) / expected, 1e-4) << m << "," << n;
    }
  }
}

TEST(EvolveLindblad, thermalSteadyStateRatio) {
  // D[a] and D[a†] with rates κ(1+n) and κn drive ⟨n⟩ toward n_th.
  const Eigen::Index d = 12;
  NoiseParams noise;
  noise.kappa_alpha = 1.0;
  noise.n_th = 0.2;
  const DensityMatrix rho = evolve_lindblad(constant(ComplexMatrix::Zero(d, d)), noise,
                                            DensityMatrix::pure(StateVector::basis(d, 0)), 0, 40,
                                            EvolutionConfig{});
  EXPECT_NEAR((rho.matrix() * number_operator(d)).trace().real(), 0.2, 1e-5);
}

TEST(CollapseOperators, ratesAndOmissions) {
  NoiseParams n;
  n.kappa_alpha = 0.01;
  n.n_th = 0.1;
  auto ops = collapse_operators(n, 10);
  ASSERT_EQ(ops.size(), 2u);
  EXPECT_DOUBLE_EQ(ops[0].rate, 0.01 * 1.1);
  EXPECT_DOUBLE_EQ(ops[1].rate, 0.01 * 0.1);
  n = {};
  n.kappa_phi = 0.02;
  ops = collapse_operators(n, 10);
  ASSERT_EQ(ops.size(), 1u);
  EXPECT_LT(max_abs(ops[0].op - number_operator(10)), 1e-15);
  n.kappa_phi = -1;
  EXPECT_THROW(n.validate(), Error);
}

TEST(SingleGate, notFlipsZero) {
  const auto p = solve_drive_coefficients(3 * kPi / 2, 0, kPi, 0.05, work_basis());
  const GateRunResult r = simulate_single_gate(p, kWork, std::nullopt, StateVector::basis(2, 0));
  EXPECT_GE(r.logical_populations[1], 0.99);
  const auto& psi = std::get<StateVector>(r.final_state);
  EXPECT_NEAR(psi.norm(), 1.0, 1e-7);
  // Leakage is measured against the propagated norm, so allow the drift bound above.
  EXPECT_NEAR(r.leakage, 1 - r.logical_populations[0] - r.logical_populations[1], 2e-7);
}

TEST(SingleGate, darkStateReturns) {
  for (const auto& [th, ph] : {std::pair{0.9, 0.2}, {3 * kPi / 2, 0.0}, {2.5, 4.0}}) {
    const auto p = solve_drive_coefficients(th, ph, kPi, 0.1, work_basis());
    const StateVector dark = dark_bright_pair(p).dark;
    const SingleGateSimulator sim(p, work_basis());
    const GateRunResult r = sim.run(dark);
    const Complex back = dark.amplitudes().dot(r.qubit_state * dark.amplitudes());
    EXPECT_GE(back.real(), 0.999) << th << " " << ph;
  }
}

TEST(SingleGate, sigmaZOnPlus) {
  const auto p = solve_drive_coefficients(0, 0, kPi, 0.05, work_basis());
  const GateRunResult r = SingleGateSimulator(p, work_basis()).run(ket2(1, 1));
  const Eigen::Vector2cd minus = Eigen::Vector2cd(1, -1) / std::sqrt(2.0);
  EXPECT_GE(minus.dot(r.qubit_state * minus).real(), 0.99);
}

TEST(SingleGate, effectiveModelConsistency) {
  double previous = 1.0;
  for (double om : {0.1, 0.05, 0.025}) {
    const auto p = solve_drive_coefficients(3 * kPi / 2, 0, kPi, om, work_basis());
    const ComplexMatrix m = SingleGateSimulator(p, work_basis()).propagator_block(3);
    const ComplexMatrix u = ideal_three_level_unitary(om, p.t_gate, dark_bright_pair(p));
    const double f = std::norm((u.adjoint() * m).trace()) / 9.0;
    EXPECT_GE(f, 0.98) << om;
    EXPECT_LT(1 - f, previous) << om;
    previous = 1 - f;
  }
}

TEST(SingleGate, leakageGrowsWithRabiFrequency) {
  double previous = 0.0;
  for (double om : {0.025, 0.05, 0.1, 0.2, 0.3}) {
    const auto p = solve_drive_coefficients(3 * kPi / 2, 0, kPi, om, work_basis());
    const double leak = SingleGateSimulator(p, work_basis()).run(StateVector::basis(2, 0)).leakage;
    EXPECT_GE(leak, previous) << om;
    previous = leak;
  }
}

TEST(SingleGate, framesAgree) {
  const LogicalBasis b = logical_basis(KpoParams::from_alpha_squared(2.34, 22));
  const auto p = solve_drive_coefficients(1.2, 0.4, kPi + 0.3, 0.2, b);
  GateSimOptions rotating;
  rotating.frame = SimulationFrame::kRotating;
  const StateVector in = ket2(1, Complex(0.3, 0.5));
  const GateRunResult a = SingleGateSimulator(p, b).run(in);
  const GateRunResult c = SingleGateSimulator(p, b, std::nullopt, rotating).run(in);
  EXPECT_LE(max_abs(a.qubit_state - c.qubit_state), 1e-8);
  EXPECT_NEAR(a.leakage, c.leakage, 1e-8);
}

TEST(SingleGate, lindbladUnitaryLimitMatchesUnitaryRun) {
  const LogicalBasis b = logical_basis(KpoParams::from_alpha_squared(2.34, 22));
  const auto p = solve_drive_coefficients(3 * kPi / 2, 0, kPi, 0.3, b);
  const StateVector in = ket2(1, Complex(0, 1));
  const GateRunResult pure = SingleGateSimulator(p, b).run(in);
  NoiseParams tiny;
  tiny.kappa_alpha = 1e-12;
  const GateRunResult mixed = SingleGateSimulator(p, b, tiny).run(in);
  EXPECT_TRUE(std::holds_alternative<DensityMatrix>(mixed.final_state));
  EXPECT_LE(max_abs(pure.qubit_state - mixed.qubit_state), 1e-7);
}

TEST(SingleGate, lossReducesQubitPopulation) {
  const LogicalBasis b = logical_basis(KpoParams::from_alpha_squared(2.34, 22));
  const auto p = solve_drive_coefficients(3 * kPi / 2, 0, kPi, 0.3, b);
  NoiseParams loss;
  loss.kappa_alpha = 0.01;
  const GateRunResult r = SingleGateSimulator(p, b, loss).run(StateVector::basis(2, 0));
  const auto& rho = std::get<DensityMatrix>(r.final_state);
  EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-6);
  EXPECT_GT(r.leakage, SingleGateSimulator(p, b).run(StateVector::basis(2, 0)).leakage);
}

TEST(SingleGate, propagatorUnavailableWithDissipation) {
  const auto p = solve_drive_coefficients(1, 0, kPi, 0.3, work_basis());
  NoiseParams n;
  n.kappa_phi = 0.01;
  EXPECT_THROW(SingleGateSimulator(p, work_basis(), n).propagator_block(2), Error);
}

TEST(SingleGate, rejectsWrongInputSize) {
  const auto p = solve_drive_coefficients(1, 0, kPi, 0.3, work_basis());
  EXPECT_TRUE(ThrowsKind([&] { SingleGateSimulator(p, work_basis()).run(StateVector::basis(3, 0)); },
                         ErrorKind::kDimensionMismatch));
}

TEST(TwoQubitGate, cnotFlipsTargetUnderControl) {
  const auto p = solve_two_qubit_drive(3 * kPi / 2, 0, kPi, 0.05, pair_basis());
  const GateRunResult r = simulate_two_qubit_gate(p, pair_basis().params, StateVector::basis(4, 2));
  EXPECT_GE(r.logical_populations[3], 0.99);
  EXPECT_NEAR(std::get<StateVector>(r.final_state).norm(), 1.0, 1e-7);
}

// Stated threshold; the exact return is 0.99503 here (oracle, frozen in
// test_frozen.cpp), so this stays red.
TEST(TwoQubitGate, idleControlBlockProtected) {
  const auto p = solve_two_qubit_drive(1.1, 0.7, kPi, 0.05, pair_basis());
  const GateRunResult r = TwoQubitGateSimulator(p, pair_basis()).run(StateVector::basis(4, 0));
  EXPECT_GE(r.qubit_state(0, 0).real(), 0.999);
}

TEST(TwoQubitGate, czPhase) {
  const auto p = solve_two_qubit_drive(0, 0, kPi, 0.05, pair_basis());
  const ComplexMatrix u = TwoQubitGateSimulator(p, pair_basis()).logical_propagator();
  // Overlap of the evolved |11⟩ with −|11⟩.
  EXPECT_GE(-u(3, 3).real(), 0.99);
}

TEST(TwoQubitGate, memoryGuard) {
  const auto p = solve_two_qubit_drive(0, 0, kPi, 0.05, pair_basis());
  EXPECT_TRUE(ThrowsKind([&] { TwoQubitGateSimulator(p, pair_basis(), {}, 100); },
                         ErrorKind::kMemoryGuard));
}

}  // namespace
}  // namespace kpo
