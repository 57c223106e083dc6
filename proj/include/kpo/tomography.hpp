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

// Process tomography over the Pauli basis {I, X, Y, Z}^⊗n, the trace-overlap
// process fidelity, and the closed-form loss distortion of the cat manifold.

#include <functional>
#include <vector>

#include "kpo/dynamics.hpp"

namespace kpo {

class ProcessMatrix {
 public:
  /// Checks Hermiticity (1e-9) and eigenvalues ≥ −1e-6. The trace is left
  /// free: leaky channels give tr χ < 1.
  ProcessMatrix(int n_qubits, ComplexMatrix chi);

  int n_qubits() const { return n_qubits_; }
  const ComplexMatrix& chi() const { return chi_; }
  double trace() const { return chi_.trace().real(); }

 private:
  int n_qubits_;
  ComplexMatrix chi_;
};

/// Pauli basis element m (0..4ⁿ−1), most significant digit = first qubit.
ComplexMatrix pauli_basis_element(int n_qubits, int m);

/// {|0⟩, |1⟩, |+⟩, |+i⟩}^⊗n in lexicographic order.
std::vector<StateVector> standard_tomography_inputs(int n_qubits);

/// Maps a 2ⁿ-dim input ket to the (possibly trace-decreasing) output density.
using LogicalChannel = std::function<ComplexMatrix(const StateVector& input)>;

struct QptOptions {
  /// Divide χ by its trace (conditions on no leakage).
  bool renormalize = false;
  /// An input whose output trace falls below 1 − this raises kChannelInvalid.
  double max_leakage = 0.5;
};

/// Linear-inversion reconstruction from the standard inputs.
ProcessMatrix qpt(const LogicalChannel& channel, int n_qubits, QptOptions options = {});

/// Reconstruction from precomputed outputs (one per standard input).
ProcessMatrix qpt_from_outputs(const std::vector<StateVector>& inputs,
                               const std::vector<ComplexMatrix>& outputs, int n_qubits,
                               QptOptions options = {});

ProcessMatrix chi_from_unitary(const ComplexMatrix& u);

/// χ of ρ ↦ MρM† for an arbitrary (contracting) logical block M.
ProcessMatrix chi_from_kraus(const ComplexMatrix& m);

/// Applies Σ χ_mn P_m ρ P_n†.
ComplexMatrix apply_process(const ProcessMatrix& chi, const ComplexMatrix& rho);

/// Re tr(χ_id χ_num).
double process_fidelity(const ProcessMatrix& chi_id, const ProcessMatrix& chi_num);

struct GateFidelity {
  double fidelity = 0.0;
  /// 1 − tr χ_num: the leaked population averaged over the qubit space.
  double leakage = 0.0;
  IntegratorStats stats;
  ProcessMatrix chi = ProcessMatrix(1, ComplexMatrix::Identity(4, 4) / 4.0);
};

/// Tomography of a simulated single-qubit gate against ideal_single_unitary
/// of the gate angles. The unitary path propagates the logical block once;
/// with dissipation each standard input is run through the master equation.
GateFidelity single_gate_fidelity(const SingleGateSimulator& sim, QptOptions options = {});

/// Same for the controlled gate against ideal_two_qubit_unitary.
GateFidelity two_qubit_gate_fidelity(const TwoQubitGateSimulator& sim, QptOptions options = {});

struct DistortionParams {
  double r0 = 0.0;
  double theta0 = 0.0;
};

/// r₀ = ((4P² − κ²/4)/(4K²))^{1/4}, tan 2θ₀ = κ/√(16P² − κ²).
/// Throws kFormulaDomain for κ ≥ 4P or κ < 0.
DistortionParams distorted_cat(double kappa_alpha, const KpoParams& p);

}  // namespace kpo
