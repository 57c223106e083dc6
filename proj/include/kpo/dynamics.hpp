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

// Schrödinger and Lindblad propagation plus end-to-end gate simulation.
//
// Gate runs are carried out in the interaction picture of Ĥ_KPO, expressed
// in its eigenbasis: Ĥ_I(t) = e^{iĤt} Ĥ_drive(t) e^{−iĤt}. The returned
// states are therefore already "unwound" by e^{+iĤ_KPO T_g}. A Fock-basis
// path in the frame of Ĥ_KPO itself is kept for cross-checks.

#include <array>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "kpo/gates.hpp"
#include "kpo/integrator.hpp"

namespace kpo {

struct NoiseParams {
  double kappa_alpha = 0.0;
  double n_th = 0.0;
  double kappa_phi = 0.0;
  double d_omega_s = 0.0;  // δΩ_s/Ω_s
  double d_omega_t = 0.0;  // δΩ_t/Ω_t

  void validate() const;
  bool dissipative() const { return kappa_alpha > 0.0 || kappa_phi > 0.0; }
};

/// One dissipator rate·D[op] of the master equation.
struct CollapseOperator {
  ComplexMatrix op;
  double rate = 0.0;
};

/// κ_α(1+n_th) D[a], κ_α n_th D[a†], κ_φ D[a†a]; zero-rate terms omitted.
std::vector<CollapseOperator> collapse_operators(const NoiseParams& noise, Eigen::Index dim);

using HamiltonianFn = std::function<ComplexMatrix(double t)>;

StateVector evolve_state(const HamiltonianFn& hamiltonian_at, const StateVector& psi0, double t0,
                         double t1, const EvolutionConfig& cfg,
                         IntegratorStats* stats = nullptr);

/// Time-dependent generator data for the general Lindblad entry point.
/// `jumps` hold √rate·L, `jump_products` the matching L†L·rate.
struct OpenSystemTerms {
  ComplexMatrix hamiltonian;
  std::vector<ComplexMatrix> jumps;
  std::vector<ComplexMatrix> jump_products;
};
using OpenSystemFn = std::function<void(double t, OpenSystemTerms& out)>;

DensityMatrix evolve_lindblad(const HamiltonianFn& hamiltonian_at, const NoiseParams& noise,
                              const DensityMatrix& rho0, double t0, double t1,
                              const EvolutionConfig& cfg, IntegratorStats* stats = nullptr);

/// Raw form; output is checked for trace drift (1e-6), Hermiticity (1e-8)
/// and positivity (−1e-5) and then symmetrized.
ComplexMatrix evolve_lindblad(const OpenSystemFn& terms_at, const ComplexMatrix& rho0, double t0,
                              double t1, const EvolutionConfig& cfg,
                              IntegratorStats* stats = nullptr);

enum class SimulationFrame { kInteraction, kRotating };

struct GateSimOptions {
  EvolutionConfig evolution;
  SimulationFrame frame = SimulationFrame::kInteraction;
};

struct GateRunResult {
  /// Fock basis (composite control⊗target for two qubits), after unwinding.
  std::variant<StateVector, DensityMatrix> final_state = StateVector::basis(1, 0);
  /// |0⟩_L..|3⟩_L for one qubit; |00⟩,|01⟩,|10⟩,|11⟩ for two.
  std::array<double, 4> logical_populations{};
  /// Population outside the computational qubit space.
  double leakage = 0.0;
  double wall_time = 0.0;
  IntegratorStats stats;
  /// Output projected on the qubit space (2ⁿ×2ⁿ, trace = 1 − leakage).
  ComplexMatrix qubit_state;
  /// Two-qubit runs only: populations of |31⟩_L and |32⟩_L.
  std::array<double, 2> leakage_monitors{};
};

class SingleGateSimulator {
 public:
  SingleGateSimulator(const SingleGateParams& gate, LogicalBasis basis,
                      std::optional<NoiseParams> noise = std::nullopt, GateSimOptions options = {});

  const LogicalBasis& basis() const { return basis_; }
  const SingleGateParams& gate() const { return gate_; }
  bool dissipative() const { return noise_ && noise_->dissipative(); }

  /// `input` is a two-component logical ket.
  GateRunResult run(const StateVector& input) const;

  /// Evolves eigenbasis columns over [0, T_g] without dissipation, in the
  /// interaction frame. Column k of the result is U_I(T_g) applied to column
  /// k of `columns`.
  ComplexMatrix propagate_eigen_columns(const ComplexMatrix& columns,
                                        IntegratorStats* stats = nullptr) const;

  /// Leading `levels`×`levels` block of U_I(T_g) over the ordered spectrum
  /// (|0⟩_L, |1⟩_L, |2⟩_L, |3⟩_L, …). Not available with dissipation.
  ComplexMatrix propagator_block(int levels, IntegratorStats* stats = nullptr) const;

  /// Output on the qubit space for a qubit-space input density.
  ComplexMatrix qubit_channel(const StateVector& input, IntegratorStats* stats = nullptr) const;

 private:
  ComplexMatrix run_rotating(const ComplexMatrix& eigen_columns, IntegratorStats* stats) const;
  ComplexMatrix run_lindblad(const ComplexMatrix& rho_eigen, IntegratorStats* stats) const;
  double default_max_step() const;

  SingleGateParams gate_;
  LogicalBasis basis_;
  std::optional<NoiseParams> noise_;
  GateSimOptions options_;
  ComplexMatrix eigvecs_;  // Fock ← eigen
  RealVector energies_;
  ComplexMatrix q_eigen_;  // drive lowering part in the eigenbasis
};

GateRunResult simulate_single_gate(const SingleGateParams& gate, const KpoParams& kpo,
                                   const std::optional<NoiseParams>& noise,
                                   const StateVector& input_logical, GateSimOptions options = {});

class TwoQubitGateSimulator {
 public:
  TwoQubitGateSimulator(const TwoQubitGateParams& gate, LogicalBasis basis,
                        GateSimOptions options = {},
                        std::size_t max_entries = kDefaultCompositeCap);

  const LogicalBasis& basis() const { return basis_; }
  const TwoQubitGateParams& gate() const { return gate_; }

  /// `input` is a four-component logical ket over |00⟩,|01⟩,|10⟩,|11⟩.
  GateRunResult run(const StateVector& input) const;

  /// 4×4 logical block of the propagator (columns = evolved |00⟩..|11⟩).
  ComplexMatrix logical_propagator(IntegratorStats* stats = nullptr) const;

 private:
  /// Each d×d block of `blocks` (stacked horizontally) is one two-mode state
  /// Ψ(control, target) in the product eigenbasis.
  ComplexMatrix evolve_blocks(const ComplexMatrix& blocks, IntegratorStats* stats) const;

  TwoQubitGateParams gate_;
  LogicalBasis basis_;
  GateSimOptions options_;
  ComplexMatrix eigvecs_;
  RealVector energies_;
  ComplexMatrix control_;  // a, eigenbasis
  ComplexMatrix target_;   // w₂ b² + w₁ b, eigenbasis
};

GateRunResult simulate_two_qubit_gate(const TwoQubitGateParams& gate, const KpoParams& kpo,
                                      const StateVector& input_logical,
                                      GateSimOptions options = {},
                                      std::size_t max_entries = kDefaultCompositeCap);

}  // namespace kpo
