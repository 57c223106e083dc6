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

// Drive synthesis for holonomic gates in the V configuration
// {|0⟩_L, |1⟩_L} ↔ |2⟩_L, the Hamiltonians that realize them and the ideal
// target unitaries.
//
// Parity fixes the wiring: a² keeps parity and can only join |0⟩_L ↔ |2⟩_L,
// a flips it and can only join |1⟩_L ↔ |2⟩_L. In the effective Hamiltonian
//
//   H′ = (Ω/2)(c₀′ e^{−iξ}|2⟩⟨1| + c₁′ e^{−iξ}|2⟩⟨0| + h.c.)
//
// the |2⟩⟨1| leg is therefore driven by the single-photon amplitude c₁ and
// the |2⟩⟨0| leg by the two-photon amplitude c₀.

#include <cstddef>
#include <string_view>

#include "kpo/kpo_model.hpp"

namespace kpo {

inline constexpr double kPi = 3.14159265358979323846;

enum class NamedGate { kNot, kA, kH, kCnot, kCz };

struct GateAngles {
  double theta = 0.0;
  double phi = 0.0;
  double gamma = kPi;
};

GateAngles named_gate_angles(NamedGate gate);
bool is_two_qubit(NamedGate gate);
std::string_view to_string(NamedGate gate);
/// Accepts NOT, A, H, CNOT, CZ (case-insensitive). Throws kInvalidArgument.
NamedGate parse_named_gate(std::string_view name);

/// Drive data shared by single- and two-qubit gates. c0p/c1p are the
/// effective leg weights (|c0p|² + |c1p|² = 1); c0/c1 the physical two- and
/// single-photon amplitudes that produce them.
struct DriveParams {
  double theta = 0.0;
  double phi = 0.0;
  double gamma = kPi;
  double xi = 0.0;
  double omega_rabi = 0.0;
  Complex c0;
  Complex c1;
  Complex c0p;
  Complex c1p;
  double t_gate = 0.0;

  /// Normalization, T_g·Ω = 2π and γ ≡ π + ξ (mod 2π), each to 1e-12.
  void validate() const;
};

struct SingleGateParams : DriveParams {
  double omega_drive = 0.0;  // E(|0⟩_L) − E(|2⟩_L) > 0
};

struct TwoQubitGateParams : DriveParams {
  double omega22 = 0.0;  // E(|11⟩_L) − E(|22⟩_L) > 0
};

struct DarkBrightPair {
  StateVector dark;    // −c0p|0⟩ + c1p|1⟩
  StateVector bright;  // c1p*|0⟩ + c0p*|1⟩
};

DarkBrightPair dark_bright_pair(Complex c0p, Complex c1p);
DarkBrightPair dark_bright_pair(const DriveParams& p);

SingleGateParams solve_drive_coefficients(double theta, double phi, double gamma,
                                          double omega_rabi, const LogicalBasis& basis);

/// Controlled holonomy on the target when the control is |1⟩_L. The idle
/// control-0 block does not pick up the bright-state sign, so the dark state
/// is placed at angle θ + π; the realized operator is then exactly
/// ideal_two_qubit_unitary(θ, φ).
TwoQubitGateParams solve_two_qubit_drive(double theta, double phi, double gamma,
                                         double omega_rabi, const LogicalBasis& basis);

/// Q in H_drive(t) = e^{−iωt} Q + e^{iωt} Q†, Fock basis:
/// Q = (Ω/2) e^{−iξ} [c₀ s_t a²/2 + c₁ s_s a], s_t/s_s the amplitude scales.
ComplexMatrix single_drive_lowering(const DriveParams& p, Eigen::Index dim,
                                    double scale_single = 1.0, double scale_two = 1.0);

ComplexMatrix single_drive_hamiltonian(const SingleGateParams& p, const KpoParams& kpo, double t);

/// 3×3 over {|0⟩_L, |1⟩_L, |2⟩_L}.
ComplexMatrix effective_hamiltonian(const DriveParams& p, const LogicalBasis& basis);

/// [[cos θ, e^{−iφ} sin θ], [e^{iφ} sin θ, −cos θ]].
ComplexMatrix ideal_single_unitary(double theta, double phi);

/// exp(−iH′t) at ξ = 0, expressed over {|0⟩_L, |1⟩_L, |2⟩_L}.
ComplexMatrix ideal_three_level_unitary(double omega_rabi, double t, const DarkBrightPair& pair);

/// Re-expresses a 3×3 operator over {|0⟩,|1⟩,|2⟩} in the {|D⟩,|B⟩,|2⟩} basis.
ComplexMatrix in_dark_bright_basis(const ComplexMatrix& u, const DarkBrightPair& pair);

/// block-diag(I₂, ideal_single_unitary(θ, φ)) over {|00⟩,|01⟩,|10⟩,|11⟩}.
ComplexMatrix ideal_two_qubit_unitary(double theta, double phi);

inline constexpr std::size_t kDefaultCompositeCap = std::size_t{1} << 24;

/// Lowering part of the two-qubit drive, Q₂ = (Ω/2) e^{−iξ}(c₀ a⊗b² + c₁ a⊗b),
/// returned as the per-mode factors so callers can apply it without forming
/// the composite matrix.
struct TwoQubitDriveFactors {
  ComplexMatrix control;        // a
  ComplexMatrix target_two;     // b²
  ComplexMatrix target_single;  // b
  Complex weight_two;           // (Ω/2) e^{−iξ} c₀
  Complex weight_single;        // (Ω/2) e^{−iξ} c₁
};
TwoQubitDriveFactors two_qubit_drive_factors(const TwoQubitGateParams& p, Eigen::Index dim);

/// Dense (fock_dim²)² Hamiltonian of the coupled pair at time t. Throws
/// kMemoryGuard when the entry count exceeds `max_entries`.
ComplexMatrix two_qubit_drive_hamiltonian(const TwoQubitGateParams& p, const KpoParams& kpo,
                                          double t, std::size_t max_entries = kDefaultCompositeCap);

void require_composite_fits(Eigen::Index fock_dim, std::size_t max_entries);

}  // namespace kpo
