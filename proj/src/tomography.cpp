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

#include "kpo/tomography.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "kpo/error.hpp"

namespace kpo {

namespace {

ComplexMatrix single_pauli(int k) {
  ComplexMatrix p(2, 2);
  switch (k) {
    case 0: p << 1, 0, 0, 1; break;
    case 1: p << 0, 1, 1, 0; break;
    case 2: p << 0, -kI, kI, 0; break;
    default: p << 1, 0, 0, -1; break;
  }
  return p;
}

void require_qubits(int n) {
  if (n != 1 && n != 2) throw Error(ErrorKind::kInvalidArgument, "n_qubits must be 1 or 2");
}

int qubits_for_dim(Eigen::Index dim) {
  if (dim == 2) return 1;
  if (dim == 4) return 2;
  throw Error(ErrorKind::kDimensionMismatch, "operator must be 2×2 or 4×4");
}

// Column-stacking vectorization.
ComplexVector vec(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ProcessMatrix chi_from_choi(const ComplexMatrix& choi, int n) {
  const int count = 1 << (2 * n);
  const double norm = static_cast<double>(count);
  ComplexMatrix basis(count, count);
  for (int m = 0; m < count; ++m) basis.col(m) = vec(pauli_basis_element(n, m));
  ComplexMatrix chi = basis.adjoint() * choi * basis / norm;
  chi = 0.5 * (chi + chi.adjoint());
  return ProcessMatrix(n, std::move(chi));
}

}  // namespace

ProcessMatrix::ProcessMatrix(int n_qubits, ComplexMatrix chi)
    : n_qubits_(n_qubits), chi_(std::move(chi)) {
  require_qubits(n_qubits);
  const Eigen::Index size = Eigen::Index{1} << (2 * n_qubits);
  if (chi_.rows() != size || chi_.cols() != size) {
    throw Error(ErrorKind::kDimensionMismatch, "χ must be 4ⁿ×4ⁿ");
  }
  if (hermiticity_defect(chi_) > 1e-9) {
    throw Error(ErrorKind::kHermiticity, "χ not Hermitian to 1e-9");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(chi_, Eigen::EigenvaluesOnly);
  const double lowest = solver.eigenvalues().minCoeff();
  if (lowest < -1e-6) {
    throw Error(ErrorKind::kChannelInvalid,
                "χ has negative eigenvalue " + std::to_string(lowest));
  }
}

ComplexMatrix pauli_basis_element(int n_qubits, int m) {
  require_qubits(n_qubits);
  if (m < 0 || m >= (1 << (2 * n_qubits))) {
    throw Error(ErrorKind::kInvalidArgument, "Pauli index out of range");
  }
  if (n_qubits == 1) return single_pauli(m);
  return kron(single_pauli(m / 4), single_pauli(m % 4));
}

std::vector<StateVector> standard_tomography_inputs(int n_qubits) {
  require_qubits(n_qubits);
  const double h = 1.0 / std::sqrt(2.0);
  std::vector<ComplexVector> single(4, ComplexVector(2));
  single[0] << 1, 0;
  single[1] << 0, 1;
  single[2] << h, h;
  single[3] << h, kI * h;
  std::vector<StateVector> out;
  if (n_qubits == 1) {
    for (const auto& v : single) out.push_back(StateVector::normalized(v));
    return out;
  }
  for (const auto& a : single) {
    for (const auto& b : single) {
      ComplexVector v(4);
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) v(2 * i + j) = a(i) * b(j);
      }
      out.push_back(StateVector::normalized(v));
    }
  }
  return out;
}

ProcessMatrix qpt_from_outputs(const std::vector<StateVector>& inputs,
                               const std::vector<ComplexMatrix>& outputs, int n_qubits,
                               QptOptions options) {
  require_qubits(n_qubits);
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  const Eigen::Index count = d * d;
  if (static_cast<Eigen::Index>(inputs.size()) != count || outputs.size() != inputs.size()) {
    throw Error(ErrorKind::kTomographyRank, "need exactly 4ⁿ input/output pairs");
  }
  ComplexMatrix r(count, count), s(count, count);
  for (Eigen::Index k = 0; k < count; ++k) {
    const auto& in = inputs[static_cast<std::size_t>(k)];
    const auto& out = outputs[static_cast<std::size_t>(k)];
    if (in.dim() != d || out.rows() != d || out.cols() != d) {
      throw Error(ErrorKind::kDimensionMismatch, "tomography data has the wrong dimension");
    }
    const double kept = out.trace().real();
    if (kept < 1.0 - options.max_leakage) {
      throw Error(ErrorKind::kChannelInvalid,
                  "input " + std::to_string(k) + " leaks " + std::to_string(1.0 - kept));
    }
    r.col(k) = vec(in.amplitudes() * in.amplitudes().adjoint());
    s.col(k) = vec(out);
  }
  // Columns of S R⁻¹ are the images of the matrix units E_j (vec order).
  Eigen::FullPivLU<ComplexMatrix> lu(r);
  lu.setThreshold(1e-10);
  if (lu.rank() < count) {
    throw Error(ErrorKind::kTomographyRank, "tomography inputs do not span the operator space");
  }
  const ComplexMatrix images = s * lu.inverse();
  ComplexMatrix choi = ComplexMatrix::Zero(count, count);
  for (Eigen::Index j = 0; j < count; ++j) {
    ComplexMatrix unit = ComplexMatrix::Zero(d, d);
    unit(j % d, j / d) = 1.0;
    const ComplexMatrix image = Eigen::Map<const ComplexMatrix>(images.col(j).data(), d, d);
    choi += kron(unit, image);
  }
  ProcessMatrix chi = chi_from_choi(choi, n_qubits);
  if (options.renormalize) {
    const double tr = chi.trace();
    if (!(tr > 0.0)) throw Error(ErrorKind::kChannelInvalid, "χ has non-positive trace");
    return ProcessMatrix(n_qubits, chi.chi() / tr);
  }
  return chi;
}

ProcessMatrix qpt(const LogicalChannel& channel, int n_qubits, QptOptions options) {
  const std::vector<StateVector> inputs = standard_tomography_inputs(n_qubits);
  std::vector<ComplexMatrix> outputs;
  outputs.reserve(inputs.size());
  for (const auto& in : inputs) outputs.push_back(channel(in));
  return qpt_from_outputs(inputs, outputs, n_qubits, options);
}

ProcessMatrix chi_from_kraus(const ComplexMatrix& m) {
  const int n = qubits_for_dim(m.rows());
  if (m.cols() != m.rows()) throw Error(ErrorKind::kDimensionMismatch, "block must be square");
  const int count = 1 << (2 * n);
  const double dim = static_cast<double>(m.rows());
  ComplexVector c(count);
  for (int k = 0; k < count; ++k) c(k) = (pauli_basis_element(n, k).adjoint() * m).trace() / dim;
  return ProcessMatrix(n, c * c.adjoint());
}

ProcessMatrix chi_from_unitary(const ComplexMatrix& u) {
  qubits_for_dim(u.rows());
  if (u.cols() != u.rows()) throw Error(ErrorKind::kDimensionMismatch, "unitary must be square");
  const ComplexMatrix defect = u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols());
  if (max_abs(defect) > 1e-9) throw Error(ErrorKind::kNonUnitary, "input is not unitary");
  ProcessMatrix chi = chi_from_kraus(u);
  return ProcessMatrix(chi.n_qubits(), chi.chi() / chi.trace());
}

ComplexMatrix apply_process(const ProcessMatrix& chi, const ComplexMatrix& rho) {
  const int n = chi.n_qubits();
  const int count = 1 << (2 * n);
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (int m = 0; m < count; ++m) {
    const ComplexMatrix pm = pauli_basis_element(n, m);
    for (int k = 0; k < count; ++k) {
      if (chi.chi()(m, k) == Complex(0.0)) continue;
      out += chi.chi()(m, k) * pm * rho * pauli_basis_element(n, k).adjoint();
    }
  }
  return out;
}

double process_fidelity(const ProcessMatrix& chi_id, const ProcessMatrix& chi_num) {
  if (chi_id.n_qubits() != chi_num.n_qubits()) {
    throw Error(ErrorKind::kDimensionMismatch, "process matrices act on different qubit counts");
  }
  return (chi_id.chi() * chi_num.chi()).trace().real();
}

GateFidelity single_gate_fidelity(const SingleGateSimulator& sim, QptOptions options) {
  GateFidelity out;
  const ProcessMatrix ideal = chi_from_unitary(ideal_single_unitary(sim.gate().theta,
                                                                    sim.gate().phi));
  if (sim.dissipative()) {
    const LogicalChannel channel = [&](const StateVector& in) {
      return sim.qubit_channel(in, &out.stats);
    };
    out.chi = qpt(channel, 1, options);
  } else {
    const ComplexMatrix m = sim.propagator_block(2, &out.stats);
    const LogicalChannel channel = [&](const StateVector& in) {
      const ComplexVector v = m * in.amplitudes();
      return ComplexMatrix(v * v.adjoint());
    };
    out.chi = qpt(channel, 1, options);
  }
  out.fidelity = process_fidelity(ideal, out.chi);
  out.leakage = 1.0 - out.chi.trace();
  return out;
}

GateFidelity two_qubit_gate_fidelity(const TwoQubitGateSimulator& sim, QptOptions options) {
  GateFidelity out;
  const ProcessMatrix ideal =
      chi_from_unitary(ideal_two_qubit_unitary(sim.gate().theta, sim.gate().phi));
  const ComplexMatrix m = sim.logical_propagator(&out.stats);
  const LogicalChannel channel = [&](const StateVector& in) {
    const ComplexVector v = m * in.amplitudes();
    return ComplexMatrix(v * v.adjoint());
  };
  out.chi = qpt(channel, 2, options);
  out.fidelity = process_fidelity(ideal, out.chi);
  out.leakage = 1.0 - out.chi.trace();
  return out;
}

DistortionParams distorted_cat(double kappa_alpha, const KpoParams& p) {
  const double k = p.kerr;
  const double drive = p.drive;
  if (!(kappa_alpha >= 0.0) || !(kappa_alpha < 4.0 * drive)) {
    throw Error(ErrorKind::kFormulaDomain, "distortion formula requires 0 ≤ κ_α < 4P");
  }
  // Same closed form, factored as √(P/K)·(1 − x)^{1/4} with x = κ²/(16P²)
  // so the κ = 0 limit is reproduced without rounding.
  const double x = kappa_alpha * kappa_alpha / (16.0 * drive * drive);
  DistortionParams out;
  out.r0 = std::sqrt(drive / k) * std::sqrt(std::sqrt(1.0 - x));
  out.theta0 = 0.5 * std::atan(kappa_alpha / (4.0 * drive * std::sqrt(1.0 - x)));
  return out;
}

}  // namespace kpo
