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

// Kerr parametric oscillator H = −K a†²a² + P(a² + a†²) in the frame rotating
// at half the pump frequency, its parity-resolved spectrum and the logical
// cat-qubit basis {|ψ₀⁺⟩, |ψ₀⁻⟩, |ψ₁⁺⟩, |ψ₁⁻⟩}.
//
// With these signs the cat doublet is the highest pair; excited pairs sit
// roughly 4nKα² below it. Energies are reported as they come out of the
// diagonalization, so E_1 < E_0.

#include <array>
#include <vector>

#include "kpo/linalg.hpp"

namespace kpo {

struct KpoParams {
  double kerr = 1.0;   // K, the energy unit
  double drive = 0.0;  // P, two-photon pump amplitude
  double alpha = 0.0;  // √(P/K)
  Eigen::Index fock_dim = 40;

  static KpoParams from_alpha_squared(double alpha_squared, Eigen::Index fock_dim,
                                      double kerr = 1.0);
  static KpoParams from_drive(double kerr, double drive, Eigen::Index fock_dim);

  double alpha_squared() const { return alpha * alpha; }

  /// Throws on K ≤ 0, P < 0, α inconsistent with P/K, or an unsafe truncation.
  void validate() const;
};

struct SpectrumLevel {
  double energy = 0.0;
  int parity = +1;              // ±1, from ⟨Π⟩
  int index_within_parity = 0;  // pair index n
  StateVector eigenvector = StateVector::basis(1, 0);
};

/// Eigensystem of H_KPO grouped into parity pairs. `levels` runs over pairs
/// n = 0, 1, … with the even member first, which coincides with descending
/// energy for the working points used here; the cat doublet is pair 0.
struct SpectrumReport {
  std::vector<SpectrumLevel> levels;
  std::vector<double> gaps;  // δ_n = E_n⁺ − E_n⁻ for every complete pair

  const SpectrumLevel& level(int pair, int parity) const;
  std::size_t pair_count() const { return gaps.size(); }

  /// (E_n⁺ + E_n⁻)/2.
  double pair_center(int pair) const;
  /// pair_center(0) − pair_center(n): the ≈4nKα² ladder with δ split off.
  double excitation_gap(int pair) const;

  /// Columns are the level eigenvectors in `levels` order.
  ComplexMatrix basis_matrix() const;
  RealVector energies() const;
};

/// |0⟩_L = |ψ₀⁺⟩, |1⟩_L = |ψ₀⁻⟩, |2⟩_L = |ψ₁⁺⟩, |3⟩_L = |ψ₁⁻⟩ (leaked).
///
/// m_t = ⟨0|a²|2⟩_L/2 and m_s = ⟨1|a|2⟩_L are the lowering-direction matrix
/// elements the two drives act through. The raising-direction elements
/// ⟨2|a²|0⟩_L and ⟨2|a|1⟩_L vanish identically because the doublet states are
/// exact cat states (a²|±α⟩ = α²|±α⟩).
struct LogicalBasis {
  KpoParams params;
  SpectrumReport spectrum;
  std::array<StateVector, 4> kets{StateVector::basis(1, 0), StateVector::basis(1, 0),
                                  StateVector::basis(1, 0), StateVector::basis(1, 0)};
  std::array<double, 4> energies{};
  Complex m_t;
  Complex m_s;

  const StateVector& ket(int k) const { return kets.at(static_cast<std::size_t>(k)); }
  /// ⟨j|op|k⟩_L for the four logical kets.
  Complex matrix_element(int j, const ComplexMatrix& op, int k) const;
};

ComplexMatrix build_kpo_hamiltonian(const KpoParams& p);

/// N₀^± = [2(1 ± e^{−2α²})]^{−1/2}.
double cat_normalization(double alpha, int parity);

StateVector coherent_state(Complex alpha, Eigen::Index dim);
StateVector cat_state(double alpha, int parity, Eigen::Index dim);
StateVector shifted_fock_state(int n, int parity, const KpoParams& p);

SpectrumReport compute_spectrum(const KpoParams& p);
LogicalBasis logical_basis(const KpoParams& p);

}  // namespace kpo
