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

// Dense complex linear algebra over truncated Fock spaces. Every container is
// an Eigen dense type; ħ = 1 and energies are in units of the Kerr constant.

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace kpo {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Normalization tolerance that StateVector enforces.
inline constexpr double kNormTolerance = 1e-9;

/// A pure state in a truncated Hilbert space.
///
/// Instances built through the checked constructor satisfy |‖ψ‖ − 1| ≤ 1e-9.
/// Intermediate vectors that are deliberately not normalized (projections,
/// leaked components) must be created with `unnormalized` so the flag travels
/// with the data.
class StateVector {
 public:
  explicit StateVector(ComplexVector amplitudes);

  static StateVector normalized(ComplexVector amplitudes);
  static StateVector unnormalized(ComplexVector amplitudes);
  static StateVector basis(Eigen::Index dim, Eigen::Index index);

  const ComplexVector& amplitudes() const { return amplitudes_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  bool is_normalized() const { return normalized_; }
  double norm() const { return amplitudes_.norm(); }

  Complex operator[](Eigen::Index i) const { return amplitudes_(i); }

  /// ⟨this|other⟩.
  Complex inner(const StateVector& other) const;

 private:
  StateVector(ComplexVector amplitudes, bool normalized);

  ComplexVector amplitudes_;
  bool normalized_ = true;
};

/// Density operator: Hermitian to 1e-9, unit trace to 1e-7, PSD to −1e-7.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix rho);

  static DensityMatrix pure(const StateVector& psi);

  const ComplexMatrix& matrix() const { return rho_; }
  Eigen::Index dim() const { return rho_.rows(); }
  double purity() const;

 private:
  ComplexMatrix rho_;
};

struct EigenSystem {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // orthonormal columns, phase-fixed
};

// Ladder and diagonal operators on span{|0⟩..|dim−1⟩}.
ComplexMatrix annihilation(Eigen::Index dim);
ComplexMatrix creation(Eigen::Index dim);
ComplexMatrix number_operator(Eigen::Index dim);
ComplexMatrix parity_operator(Eigen::Index dim);
ComplexMatrix identity(Eigen::Index dim);

/// Smallest Fock dimension that keeps |α|-sized coherent, cat and shifted
/// Fock states inside the truncation: |α|² + 6|α| + 10.
double minimum_safe_dimension(double abs_alpha);

/// Throws kTruncationTooSmall when `dim` violates minimum_safe_dimension.
void require_safe_truncation(double abs_alpha, Eigen::Index dim);

/// D(α) = exp(α a† − α* a) evaluated exactly inside the truncated space.
ComplexMatrix displacement(Complex alpha, Eigen::Index dim);

/// Hermitian eigendecomposition with ascending eigenvalues. Each eigenvector
/// is rotated so its largest-magnitude component is real and positive.
EigenSystem hermitian_eig(const ComplexMatrix& m);

/// exp(−i H t) for Hermitian H.
ComplexMatrix unitary_propagator(const ComplexMatrix& h, double t);

/// Rotates `v` in place so that its largest-magnitude entry is real positive.
void fix_global_phase(Eigen::Ref<ComplexVector> v);

ComplexMatrix dagger(const ComplexMatrix& m);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs(const ComplexMatrix& m);
/// max |M − M†| over all entries.
double hermiticity_defect(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = 1e-9);

Complex expectation(const ComplexMatrix& op, const StateVector& psi);

}  // namespace kpo
