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

#include "kpo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "kpo/error.hpp"

namespace kpo {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidDimension: return "invalid-dimension";
    case ErrorKind::kTruncationTooSmall: return "truncation-too-small";
    case ErrorKind::kHermiticity: return "hermiticity";
    case ErrorKind::kDegenerateState: return "degenerate-state";
    case ErrorKind::kClassification: return "classification";
    case ErrorKind::kUnresolvableCoupling: return "unresolvable-coupling";
    case ErrorKind::kMemoryGuard: return "memory-guard";
    case ErrorKind::kStiffness: return "stiffness";
    case ErrorKind::kIntegratorFailure: return "integrator-failure";
    case ErrorKind::kTomographyRank: return "tomography-rank";
    case ErrorKind::kChannelInvalid: return "channel-invalid";
    case ErrorKind::kNonUnitary: return "non-unitary";
    case ErrorKind::kDimensionMismatch: return "dimension-mismatch";
    case ErrorKind::kFormulaDomain: return "formula-domain";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

namespace {

void require_dim(Eigen::Index dim, Eigen::Index minimum) {
  if (dim < minimum) {
    throw Error(ErrorKind::kInvalidDimension,
                "dimension " + std::to_string(dim) + " < " + std::to_string(minimum));
  }
}

bool all_finite(const ComplexMatrix& m) {
  return m.real().allFinite() && m.imag().allFinite();
}

}  // namespace

// ---------------------------------------------------------------- StateVector

StateVector::StateVector(ComplexVector amplitudes, bool normalized)
    : amplitudes_(std::move(amplitudes)), normalized_(normalized) {
  require_dim(amplitudes_.size(), 1);
  if (!amplitudes_.real().allFinite() || !amplitudes_.imag().allFinite()) {
    throw Error(ErrorKind::kInvalidArgument, "state has non-finite amplitudes");
  }
}

StateVector::StateVector(ComplexVector amplitudes) : StateVector(std::move(amplitudes), true) {
  if (std::abs(norm() - 1.0) > kNormTolerance) {
    throw Error(ErrorKind::kInvalidArgument,
                "state norm " + std::to_string(norm()) + " outside 1 ± 1e-9");
  }
}

StateVector StateVector::normalized(ComplexVector amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorKind::kDegenerateState, "cannot normalize a zero-norm vector");
  }
  amplitudes /= n;
  return StateVector(std::move(amplitudes), true);
}

StateVector StateVector::unnormalized(ComplexVector amplitudes) {
  return StateVector(std::move(amplitudes), false);
}

StateVector StateVector::basis(Eigen::Index dim, Eigen::Index index) {
  require_dim(dim, 1);
  if (index < 0 || index >= dim) {
    throw Error(ErrorKind::kInvalidArgument, "basis index out of range");
  }
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v), true);
}

Complex StateVector::inner(const StateVector& other) const {
  if (other.dim() != dim()) {
    throw Error(ErrorKind::kDimensionMismatch, "inner product of states of different dimension");
  }
  return amplitudes_.dot(other.amplitudes_);  // Eigen conjugates the left operand
}

// -------------------------------------------------------------- DensityMatrix

DensityMatrix::DensityMatrix(ComplexMatrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols()) {
    throw Error(ErrorKind::kInvalidDimension, "density matrix must be square");
  }
  require_dim(rho_.rows(), 1);
  if (!all_finite(rho_)) throw Error(ErrorKind::kInvalidArgument, "non-finite density matrix");
  if (hermiticity_defect(rho_) > 1e-9) {
    throw Error(ErrorKind::kHermiticity, "density matrix not Hermitian to 1e-9");
  }
  const Complex tr = rho_.trace();
  if (std::abs(tr - 1.0) > 1e-7) {
    throw Error(ErrorKind::kInvalidArgument, "density matrix trace " + std::to_string(tr.real()));
  }
  const ComplexMatrix herm = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-7) {
    throw Error(ErrorKind::kInvalidArgument, "density matrix not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  const ComplexVector& v = psi.amplitudes();
  return DensityMatrix(v * v.adjoint() / v.squaredNorm());
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

// ------------------------------------------------------------------ operators

ComplexMatrix annihilation(Eigen::Index dim) {
  require_dim(dim, 2);
  ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

ComplexMatrix creation(Eigen::Index dim) { return annihilation(dim).adjoint(); }

ComplexMatrix number_operator(Eigen::Index dim) {
  require_dim(dim, 2);
  ComplexMatrix n = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

ComplexMatrix parity_operator(Eigen::Index dim) {
  require_dim(dim, 2);
  ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) p(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
  return p;
}

ComplexMatrix identity(Eigen::Index dim) {
  require_dim(dim, 1);
  return ComplexMatrix::Identity(dim, dim);
}

double minimum_safe_dimension(double abs_alpha) {
  return abs_alpha * abs_alpha + 6.0 * abs_alpha + 10.0;
}

void require_safe_truncation(double abs_alpha, Eigen::Index dim) {
  const double needed = minimum_safe_dimension(abs_alpha);
  if (static_cast<double>(dim) < needed) {
    throw Error(ErrorKind::kTruncationTooSmall,
                "fock_dim " + std::to_string(dim) + " < |α|²+6|α|+10 = " + std::to_string(needed));
  }
}

ComplexMatrix displacement(Complex alpha, Eigen::Index dim) {
  require_dim(dim, 2);
  require_safe_truncation(std::abs(alpha), dim);
  if (alpha == Complex{0.0, 0.0}) return ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix a = annihilation(dim);
  // i(α a† − α* a) is Hermitian, so D = exp(−i · i(α a† − α* a)).
  const ComplexMatrix generator = kI * (alpha * a.adjoint() - std::conj(alpha) * a);
  return unitary_propagator(generator, 1.0);
}

void fix_global_phase(Eigen::Ref<ComplexVector> v) {
  if (v.size() == 0) return;
  double best = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) best = std::max(best, std::abs(v(i)));
  if (best == 0.0) return;
  // First index within round-off of the maximum, so ties resolve deterministically.
  Eigen::Index pick = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= best * (1.0 - 1e-10)) {
      pick = i;
      break;
    }
  }
  const Complex phase = std::conj(v(pick)) / std::abs(v(pick));
  v *= phase;
  v(pick) = std::abs(v(pick));
}

EigenSystem hermitian_eig(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::kInvalidDimension, "matrix must be square");
  require_dim(m.rows(), 1);
  if (!all_finite(m)) throw Error(ErrorKind::kInvalidArgument, "non-finite matrix entries");
  const double scale = std::max(1.0, max_abs(m));
  if (hermiticity_defect(m) > 1e-9 * scale) {
    throw Error(ErrorKind::kHermiticity,
                "max|M − M†| = " + std::to_string(hermiticity_defect(m)) + " exceeds tolerance");
  }
  const ComplexMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::kInvalidArgument, "eigensolver did not converge");
  }
  EigenSystem out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index j = 0; j < out.eigenvectors.cols(); ++j) {
    fix_global_phase(out.eigenvectors.col(j));
  }
  return out;
}

ComplexMatrix unitary_propagator(const ComplexMatrix& h, double t) {
  const EigenSystem es = hermitian_eig(h);
  ComplexVector phases(es.eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases(k) = std::exp(-kI * es.eigenvalues(k) * t);
  }
  return es.eigenvectors * phases.asDiagonal() * es.eigenvectors.adjoint();
}

ComplexMatrix dagger(const ComplexMatrix& m) { return m.adjoint(); }

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b + b * a;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(m - m.adjoint());
}

bool is_hermitian(const ComplexMatrix& m, double tol) { return hermiticity_defect(m) <= tol; }

Complex expectation(const ComplexMatrix& op, const StateVector& psi) {
  if (op.rows() != psi.dim() || op.cols() != psi.dim()) {
    throw Error(ErrorKind::kDimensionMismatch, "operator/state dimension mismatch");
  }
  return psi.amplitudes().dot(op * psi.amplitudes());
}

}  // namespace kpo
