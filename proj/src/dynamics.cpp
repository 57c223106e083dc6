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

#include <chrono>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "kpo/error.hpp"

namespace kpo {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Φ_ij = e^{i(E_i − E_j)t}; X_I = Φ ∘ X is the interaction-picture image of
// an eigenbasis operator X.
ComplexMatrix phase_matrix(const RealVector& energies, double t) {
  const Eigen::Index d = energies.size();
  ComplexVector p(d);
  for (Eigen::Index i = 0; i < d; ++i) p(i) = std::polar(1.0, energies(i) * t);
  return p * p.adjoint();
}

StateVector checked_or_flagged(ComplexVector v) {
  if (std::abs(v.norm() - 1.0) <= 1e-9) return StateVector(std::move(v));
  return StateVector::unnormalized(std::move(v));
}

// −i H_eff ρ + i ρ H_eff† + Σ LρL†, H_eff = H − (i/2) Σ L†L. Both products
// are formed explicitly: the cheaper X + X† shortcut lets a roundoff-level
// anti-Hermitian part grow at a rate ~‖L‖².
void lindblad_rhs(const ComplexMatrix& heff, const std::vector<ComplexMatrix>& jumps,
                  const ComplexMatrix& rho, ComplexMatrix& out) {
  out.noalias() = -kI * (heff * rho);
  out.noalias() += kI * (rho * heff.adjoint());
  for (const ComplexMatrix& l : jumps) out.noalias() += l * rho * l.adjoint();
}

void check_open_output(const ComplexMatrix& rho0, ComplexMatrix& rho1) {
  const double drift = std::abs(rho1.trace() - rho0.trace());
  if (drift > 1e-6) {
    throw Error(ErrorKind::kIntegratorFailure, "trace drift " + std::to_string(drift));
  }
  const double defect = hermiticity_defect(rho1);
  if (defect > 1e-8) {
    throw Error(ErrorKind::kIntegratorFailure, "Hermiticity drift " + std::to_string(defect));
  }
  rho1 = 0.5 * (rho1 + rho1.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho1, Eigen::EigenvaluesOnly);
  const double lowest = solver.eigenvalues().minCoeff();
  if (lowest < -1e-5) {
    throw Error(ErrorKind::kIntegratorFailure,
                "positivity violated, eigenvalue " + std::to_string(lowest));
  }
}

std::array<double, 4> leading_populations(const ComplexVector& diag) {
  std::array<double, 4> pops{};
  for (Eigen::Index k = 0; k < 4 && k < diag.size(); ++k) {
    pops[static_cast<std::size_t>(k)] = std::abs(diag(k));
  }
  return pops;
}

}  // namespace

// ------------------------------------------------------------------ noise

void NoiseParams::validate() const {
  const auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(kappa_alpha) || !finite(n_th) || !finite(kappa_phi) || !finite(d_omega_s) ||
      !finite(d_omega_t)) {
    throw Error(ErrorKind::kInvalidArgument, "noise parameters must be finite");
  }
  if (kappa_alpha < 0.0) throw Error(ErrorKind::kInvalidArgument, "kappa_alpha must be ≥ 0");
  if (n_th < 0.0) throw Error(ErrorKind::kInvalidArgument, "n_th must be ≥ 0");
  if (kappa_phi < 0.0) throw Error(ErrorKind::kInvalidArgument, "kappa_phi must be ≥ 0");
  if (std::abs(d_omega_s) >= 1.0 || std::abs(d_omega_t) >= 1.0) {
    throw Error(ErrorKind::kInvalidArgument, "fractional amplitude fluctuations must be < 1");
  }
}

std::vector<CollapseOperator> collapse_operators(const NoiseParams& noise, Eigen::Index dim) {
  noise.validate();
  std::vector<CollapseOperator> ops;
  const double down = noise.kappa_alpha * (1.0 + noise.n_th);
  const double up = noise.kappa_alpha * noise.n_th;
  if (down > 0.0) ops.push_back({annihilation(dim), down});
  if (up > 0.0) ops.push_back({creation(dim), up});
  if (noise.kappa_phi > 0.0) ops.push_back({number_operator(dim), noise.kappa_phi});
  return ops;
}

// ------------------------------------------------------------ propagation

StateVector evolve_state(const HamiltonianFn& hamiltonian_at, const StateVector& psi0, double t0,
                         double t1, const EvolutionConfig& cfg, IntegratorStats* stats) {
  const Eigen::Index d = psi0.dim();
  const MatrixRhs rhs = [&](double t, const ComplexMatrix& y, ComplexMatrix& dy) {
    const ComplexMatrix h = hamiltonian_at(t);
    if (h.rows() != d || h.cols() != d) {
      throw Error(ErrorKind::kDimensionMismatch, "Hamiltonian and state dimensions differ");
    }
    dy.noalias() = -kI * (h * y);
  };
  ComplexMatrix y = integrate(rhs, psi0.amplitudes(), t0, t1, cfg, (t1 - t0) / 100.0, stats);
  ComplexVector out = y.col(0);
  if (psi0.is_normalized()) {
    const double drift = std::abs(out.norm() - 1.0);
    if (drift > 1e-7) {
      throw Error(ErrorKind::kIntegratorFailure, "norm drift " + std::to_string(drift));
    }
  }
  return psi0.is_normalized() ? checked_or_flagged(std::move(out))
                              : StateVector::unnormalized(std::move(out));
}

ComplexMatrix evolve_lindblad(const OpenSystemFn& terms_at, const ComplexMatrix& rho0, double t0,
                              double t1, const EvolutionConfig& cfg, IntegratorStats* stats) {
  if (rho0.rows() != rho0.cols()) {
    throw Error(ErrorKind::kInvalidDimension, "density matrix must be square");
  }
  if (hermiticity_defect(rho0) > 1e-9) {
    throw Error(ErrorKind::kHermiticity, "initial density matrix not Hermitian");
  }
  const Eigen::Index d = rho0.rows();
  const MatrixRhs rhs = [&](double t, const ComplexMatrix& rho, ComplexMatrix& out) {
    OpenSystemTerms terms;
    terms_at(t, terms);
    if (terms.hamiltonian.rows() != d || terms.jumps.size() != terms.jump_products.size()) {
      throw Error(ErrorKind::kDimensionMismatch, "open-system terms do not match the state");
    }
    ComplexMatrix heff = terms.hamiltonian;
    for (const ComplexMatrix& m : terms.jump_products) heff -= (0.5 * kI) * m;
    lindblad_rhs(heff, terms.jumps, rho, out);
  };
  ComplexMatrix rho1 = integrate(rhs, rho0, t0, t1, cfg, (t1 - t0) / 100.0, stats);
  check_open_output(rho0, rho1);
  return rho1;
}

DensityMatrix evolve_lindblad(const HamiltonianFn& hamiltonian_at, const NoiseParams& noise,
                              const DensityMatrix& rho0, double t0, double t1,
                              const EvolutionConfig& cfg, IntegratorStats* stats) {
  const Eigen::Index d = rho0.dim();
  std::vector<ComplexMatrix> jumps, products;
  for (const CollapseOperator& c : collapse_operators(noise, d)) {
    jumps.push_back(std::sqrt(c.rate) * c.op);
    products.push_back(c.rate * (c.op.adjoint() * c.op));
  }
  const OpenSystemFn terms = [&](double t, OpenSystemTerms& out) {
    out.hamiltonian = hamiltonian_at(t);
    out.jumps = jumps;
    out.jump_products = products;
  };
  ComplexMatrix rho1 = evolve_lindblad(terms, rho0.matrix(), t0, t1, cfg, stats);
  return DensityMatrix(rho1 / rho1.trace().real());
}

// ------------------------------------------------------- single-qubit gate

SingleGateSimulator::SingleGateSimulator(const SingleGateParams& gate, LogicalBasis basis,
                                         std::optional<NoiseParams> noise, GateSimOptions options)
    : gate_(gate), basis_(std::move(basis)), noise_(std::move(noise)), options_(options) {
  gate_.validate();
  options_.evolution.validate();
  if (noise_) noise_->validate();
  eigvecs_ = basis_.spectrum.basis_matrix();
  energies_ = basis_.spectrum.energies();
  const double s_single = noise_ ? 1.0 + noise_->d_omega_s : 1.0;
  const double s_two = noise_ ? 1.0 + noise_->d_omega_t : 1.0;
  const ComplexMatrix q = single_drive_lowering(gate_, basis_.params.fock_dim, s_single, s_two);
  q_eigen_ = eigvecs_.adjoint() * q * eigvecs_;
}

double SingleGateSimulator::default_max_step() const { return 0.02 / gate_.omega_rabi; }

ComplexMatrix SingleGateSimulator::propagate_eigen_columns(const ComplexMatrix& columns,
                                                           IntegratorStats* stats) const {
  if (columns.rows() != energies_.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "columns do not match the Fock truncation");
  }
  if (options_.frame == SimulationFrame::kRotating) return run_rotating(columns, stats);
  const double w = gate_.omega_drive;
  const MatrixRhs rhs = [&](double t, const ComplexMatrix& y, ComplexMatrix& dy) {
    const Complex u = std::polar(1.0, -w * t);
    const ComplexMatrix h =
        phase_matrix(energies_, t).cwiseProduct(u * q_eigen_ + std::conj(u) * q_eigen_.adjoint());
    dy.noalias() = -kI * (h * y);
  };
  return integrate(rhs, columns, 0.0, gate_.t_gate, options_.evolution, default_max_step(), stats);
}

ComplexMatrix SingleGateSimulator::run_rotating(const ComplexMatrix& eigen_columns,
                                                IntegratorStats* stats) const {
  const ComplexMatrix h0 = build_kpo_hamiltonian(basis_.params);
  const ComplexMatrix q = eigvecs_ * q_eigen_ * eigvecs_.adjoint();
  const double w = gate_.omega_drive;
  const MatrixRhs rhs = [&](double t, const ComplexMatrix& y, ComplexMatrix& dy) {
    const Complex u = std::polar(1.0, -w * t);
    const ComplexMatrix h = h0 + u * q + std::conj(u) * q.adjoint();
    dy.noalias() = -kI * (h * y);
  };
  const ComplexMatrix fock = eigvecs_ * eigen_columns;
  const ComplexMatrix out =
      integrate(rhs, fock, 0.0, gate_.t_gate, options_.evolution, default_max_step(), stats);
  // Unwind with e^{+iĤT_g}, expressed in the eigenbasis.
  ComplexVector unwind(energies_.size());
  for (Eigen::Index i = 0; i < energies_.size(); ++i) {
    unwind(i) = std::polar(1.0, energies_(i) * gate_.t_gate);
  }
  return unwind.asDiagonal() * (eigvecs_.adjoint() * out);
}

ComplexMatrix SingleGateSimulator::run_lindblad(const ComplexMatrix& rho_eigen,
                                                IntegratorStats* stats) const {
  const Eigen::Index d = energies_.size();
  std::vector<ComplexMatrix> jumps;
  ComplexMatrix products = ComplexMatrix::Zero(d, d);
  for (const CollapseOperator& c : collapse_operators(*noise_, d)) {
    const ComplexMatrix l = std::sqrt(c.rate) * (eigvecs_.adjoint() * c.op * eigvecs_);
    products += l.adjoint() * l;
    jumps.push_back(l);
  }
  const ComplexMatrix damping = (-0.5 * kI) * products;
  const double w = gate_.omega_drive;
  const MatrixRhs rhs = [&](double t, const ComplexMatrix& rho, ComplexMatrix& out) {
    const Complex u = std::polar(1.0, -w * t);
    const ComplexMatrix phase = phase_matrix(energies_, t);
    const ComplexMatrix heff =
        phase.cwiseProduct(u * q_eigen_ + std::conj(u) * q_eigen_.adjoint() + damping);
    std::vector<ComplexMatrix> local;
    local.reserve(jumps.size());
    for (const ComplexMatrix& l : jumps) local.push_back(phase.cwiseProduct(l));
    lindblad_rhs(heff, local, rho, out);
  };
  ComplexMatrix rho1 =
      integrate(rhs, rho_eigen, 0.0, gate_.t_gate, options_.evolution, default_max_step(), stats);
  check_open_output(rho_eigen, rho1);
  return rho1;
}

ComplexMatrix SingleGateSimulator::propagator_block(int levels, IntegratorStats* stats) const {
  if (dissipative()) {
    throw Error(ErrorKind::kInvalidArgument, "propagator undefined with dissipation");
  }
  const Eigen::Index d = energies_.size();
  if (levels < 1 || levels > d) throw Error(ErrorKind::kInvalidArgument, "bad block size");
  const ComplexMatrix cols = ComplexMatrix::Identity(d, levels);
  return propagate_eigen_columns(cols, stats).topRows(levels);
}

GateRunResult SingleGateSimulator::run(const StateVector& input) const {
  if (input.dim() != 2) throw Error(ErrorKind::kDimensionMismatch, "logical input must be 2-dim");
  const auto start = Clock::now();
  const Eigen::Index d = energies_.size();
  GateRunResult r;
  if (dissipative()) {
    ComplexMatrix rho0 = ComplexMatrix::Zero(d, d);
    rho0.topLeftCorner(2, 2) = input.amplitudes() * input.amplitudes().adjoint();
    const ComplexMatrix rho = run_lindblad(rho0, &r.stats);
    r.logical_populations = leading_populations(rho.diagonal());
    r.qubit_state = rho.topLeftCorner(2, 2);
    r.leakage = std::max(0.0, rho.trace().real() - r.qubit_state.trace().real());
    const ComplexMatrix fock = eigvecs_ * rho * eigvecs_.adjoint();
    r.final_state = DensityMatrix(0.5 * (fock + fock.adjoint()) / fock.trace().real());
  } else {
    ComplexMatrix col = ComplexMatrix::Zero(d, 1);
    col.topRows(2) = input.amplitudes();
    const ComplexVector psi = propagate_eigen_columns(col, &r.stats).col(0);
    ComplexVector pop(psi.size());
    for (Eigen::Index i = 0; i < psi.size(); ++i) pop(i) = std::norm(psi(i));
    r.logical_populations = leading_populations(pop);
    const ComplexVector q = psi.head(2);
    r.qubit_state = q * q.adjoint();
    r.leakage = std::max(0.0, psi.squaredNorm() - q.squaredNorm());
    r.final_state = checked_or_flagged(eigvecs_ * psi);
  }
  r.wall_time = seconds_since(start);
  return r;
}

ComplexMatrix SingleGateSimulator::qubit_channel(const StateVector& input,
                                                 IntegratorStats* stats) const {
  GateRunResult r = run(input);
  if (stats) stats->merge(r.stats);
  return r.qubit_state;
}

GateRunResult simulate_single_gate(const SingleGateParams& gate, const KpoParams& kpo,
                                   const std::optional<NoiseParams>& noise,
                                   const StateVector& input_logical, GateSimOptions options) {
  return SingleGateSimulator(gate, logical_basis(kpo), noise, options).run(input_logical);
}

// ---------------------------------------------------------- two-qubit gate

TwoQubitGateSimulator::TwoQubitGateSimulator(const TwoQubitGateParams& gate, LogicalBasis basis,
                                             GateSimOptions options, std::size_t max_entries)
    : gate_(gate), basis_(std::move(basis)), options_(options) {
  gate_.validate();
  options_.evolution.validate();
  if (options_.frame != SimulationFrame::kInteraction) {
    throw Error(ErrorKind::kInvalidArgument, "two-qubit runs support the interaction frame only");
  }
  const Eigen::Index d = basis_.params.fock_dim;
  require_composite_fits(d, max_entries);
  eigvecs_ = basis_.spectrum.basis_matrix();
  energies_ = basis_.spectrum.energies();
  const TwoQubitDriveFactors f = two_qubit_drive_factors(gate_, d);
  control_ = eigvecs_.adjoint() * f.control * eigvecs_;
  target_ = eigvecs_.adjoint() *
            (f.weight_two * f.target_two + f.weight_single * f.target_single) * eigvecs_;
}

ComplexMatrix TwoQubitGateSimulator::evolve_blocks(const ComplexMatrix& blocks,
                                                   IntegratorStats* stats) const {
  const Eigen::Index d = energies_.size();
  const Eigen::Index count = blocks.cols() / d;
  const double w = gate_.omega22;
  // (A⊗C)ψ ↔ A Ψ Cᵀ and (A†⊗C†)ψ ↔ A† Ψ C̄ for Ψ(control, target).
  const MatrixRhs rhs = [&](double t, const ComplexMatrix& y, ComplexMatrix& dy) {
    const Complex u = std::polar(1.0, -w * t);
    const ComplexMatrix phase = phase_matrix(energies_, t);
    const ComplexMatrix a = phase.cwiseProduct(control_);
    const ComplexMatrix c = phase.cwiseProduct(target_);
    const ComplexMatrix c_t = c.transpose();
    const ComplexMatrix c_bar = c.conjugate();
    const ComplexMatrix ay = (-kI * u) * (a * y);
    const ComplexMatrix ady = (-kI * std::conj(u)) * (a.adjoint() * y);
    for (Eigen::Index k = 0; k < count; ++k) {
      dy.middleCols(k * d, d).noalias() = ay.middleCols(k * d, d) * c_t;
      dy.middleCols(k * d, d).noalias() += ady.middleCols(k * d, d) * c_bar;
    }
  };
  return integrate(rhs, blocks, 0.0, gate_.t_gate, options_.evolution, 0.02 / gate_.omega_rabi,
                   stats);
}

ComplexMatrix TwoQubitGateSimulator::logical_propagator(IntegratorStats* stats) const {
  const Eigen::Index d = energies_.size();
  ComplexMatrix blocks = ComplexMatrix::Zero(d, 4 * d);
  for (Eigen::Index k = 0; k < 4; ++k) blocks(k / 2, k * d + k % 2) = 1.0;
  const ComplexMatrix out = evolve_blocks(blocks, stats);
  ComplexMatrix m(4, 4);
  for (Eigen::Index k = 0; k < 4; ++k) {
    for (Eigen::Index j = 0; j < 4; ++j) m(j, k) = out(j / 2, k * d + j % 2);
  }
  return m;
}

GateRunResult TwoQubitGateSimulator::run(const StateVector& input) const {
  if (input.dim() != 4) throw Error(ErrorKind::kDimensionMismatch, "logical input must be 4-dim");
  const auto start = Clock::now();
  const Eigen::Index d = energies_.size();
  ComplexMatrix psi0 = ComplexMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < 4; ++k) psi0(k / 2, k % 2) = input[k];
  GateRunResult r;
  const ComplexMatrix psi = evolve_blocks(psi0, &r.stats);
  ComplexVector q(4);
  for (Eigen::Index k = 0; k < 4; ++k) {
    q(k) = psi(k / 2, k % 2);
    r.logical_populations[static_cast<std::size_t>(k)] = std::norm(q(k));
  }
  r.qubit_state = q * q.adjoint();
  r.leakage = std::max(0.0, psi.squaredNorm() - q.squaredNorm());
  r.leakage_monitors = {std::norm(psi(3, 1)), std::norm(psi(3, 2))};
  // Fock composite: (V ⊗ V) vec_row(Ψ) ↔ V Ψ Vᵀ, flattened control-major.
  const ComplexMatrix fock = eigvecs_ * psi * eigvecs_.transpose();
  ComplexVector flat(d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) flat(i * d + j) = fock(i, j);
  }
  r.final_state = checked_or_flagged(std::move(flat));
  r.wall_time = seconds_since(start);
  return r;
}

GateRunResult simulate_two_qubit_gate(const TwoQubitGateParams& gate, const KpoParams& kpo,
                                      const StateVector& input_logical, GateSimOptions options,
                                      std::size_t max_entries) {
  return TwoQubitGateSimulator(gate, logical_basis(kpo), options, max_entries).run(input_logical);
}

}  // namespace kpo
