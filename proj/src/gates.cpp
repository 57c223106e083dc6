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

#include "kpo/gates.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "kpo/error.hpp"

namespace kpo {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

// Wraps into (−π, π].
double wrap_angle(double x) {
  double r = std::fmod(x + kPi, kTwoPi);
  if (r <= 0.0) r += kTwoPi;
  return r - kPi;
}

void require_resolvable(Complex m, const char* name) {
  if (std::abs(m) < 1e-6) {
    throw Error(ErrorKind::kUnresolvableCoupling,
                std::string(name) + " = " + std::to_string(std::abs(m)) + " below 1e-6");
  }
}

DriveParams base_drive(double theta_dark, double theta, double phi, double gamma,
                       double omega_rabi) {
  if (!(omega_rabi > 0.0) || !std::isfinite(omega_rabi)) {
    throw Error(ErrorKind::kInvalidArgument, "omega_rabi must be > 0");
  }
  DriveParams p;
  p.theta = theta;
  p.phi = phi;
  p.gamma = gamma;
  p.xi = wrap_angle(gamma - kPi);
  p.omega_rabi = omega_rabi;
  p.c0p = std::sin(theta_dark / 2.0) * std::exp(-kI * phi);
  p.c1p = std::cos(theta_dark / 2.0);
  p.t_gate = kTwoPi / omega_rabi;
  return p;
}

}  // namespace

GateAngles named_gate_angles(NamedGate gate) {
  switch (gate) {
    case NamedGate::kNot: return {3.0 * kPi / 2.0, 0.0, kPi};
    case NamedGate::kA: return {3.0 * kPi / 2.0, kPi / 4.0, kPi};
    case NamedGate::kH: return {7.0 * kPi / 4.0, 0.0, kPi};
    case NamedGate::kCnot: return {3.0 * kPi / 2.0, 0.0, kPi};
    case NamedGate::kCz: return {0.0, 0.0, kPi};
  }
  return {};
}

bool is_two_qubit(NamedGate gate) { return gate == NamedGate::kCnot || gate == NamedGate::kCz; }

std::string_view to_string(NamedGate gate) {
  switch (gate) {
    case NamedGate::kNot: return "NOT";
    case NamedGate::kA: return "A";
    case NamedGate::kH: return "H";
    case NamedGate::kCnot: return "CNOT";
    case NamedGate::kCz: return "CZ";
  }
  return "?";
}

NamedGate parse_named_gate(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "NOT") return NamedGate::kNot;
  if (upper == "A") return NamedGate::kA;
  if (upper == "H") return NamedGate::kH;
  if (upper == "CNOT") return NamedGate::kCnot;
  if (upper == "CZ") return NamedGate::kCz;
  throw Error(ErrorKind::kInvalidArgument, "unknown gate '" + std::string(name) + "'");
}

void DriveParams::validate() const {
  const double norm = std::norm(c0p) + std::norm(c1p);
  if (std::abs(norm - 1.0) > 1e-12) {
    throw Error(ErrorKind::kInvalidArgument, "|c0p|² + |c1p|² ≠ 1");
  }
  if (std::abs(t_gate * omega_rabi - kTwoPi) > 1e-12) {
    throw Error(ErrorKind::kInvalidArgument, "t_gate · Ω ≠ 2π");
  }
  if (std::abs(wrap_angle(gamma - kPi - xi)) > 1e-12) {
    throw Error(ErrorKind::kInvalidArgument, "γ ≠ π + ξ (mod 2π)");
  }
}

DarkBrightPair dark_bright_pair(Complex c0p, Complex c1p) {
  ComplexVector dark(2), bright(2);
  dark << -c0p, c1p;
  bright << std::conj(c1p), std::conj(c0p);
  return {StateVector(std::move(dark)), StateVector(std::move(bright))};
}

DarkBrightPair dark_bright_pair(const DriveParams& p) { return dark_bright_pair(p.c0p, p.c1p); }

SingleGateParams solve_drive_coefficients(double theta, double phi, double gamma,
                                          double omega_rabi, const LogicalBasis& basis) {
  require_resolvable(basis.m_t, "|m_t|");
  require_resolvable(basis.m_s, "|m_s|");
  SingleGateParams p;
  static_cast<DriveParams&>(p) = base_drive(theta, theta, phi, gamma, omega_rabi);
  // The rotating-wave part of the physical drive reproduces H′ exactly when
  // c e^{−iξ} ⟨k|X|2⟩ = w* e^{iξ} for each leg weight w.
  const Complex frame = std::exp(2.0 * kI * p.xi);
  p.c1 = std::conj(p.c0p) * frame / basis.m_s;
  p.c0 = std::conj(p.c1p) * frame / basis.m_t;
  p.omega_drive = basis.energies[0] - basis.energies[2];
  p.validate();
  return p;
}

TwoQubitGateParams solve_two_qubit_drive(double theta, double phi, double gamma,
                                         double omega_rabi, const LogicalBasis& basis) {
  require_resolvable(basis.m_t, "|m_t|");
  require_resolvable(basis.m_s, "|m_s|");
  TwoQubitGateParams p;
  static_cast<DriveParams&>(p) = base_drive(theta + kPi, theta, phi, gamma, omega_rabi);
  // ⟨11|a⊗b|22⟩ = m_s², ⟨10|a⊗b²|22⟩ = 2 m_s m_t.
  const Complex frame = std::exp(2.0 * kI * p.xi);
  p.c1 = std::conj(p.c0p) * frame / (basis.m_s * basis.m_s);
  p.c0 = std::conj(p.c1p) * frame / (2.0 * basis.m_s * basis.m_t);
  p.omega22 = 2.0 * (basis.energies[0] - basis.energies[2]);
  p.validate();
  return p;
}

ComplexMatrix single_drive_lowering(const DriveParams& p, Eigen::Index dim, double scale_single,
                                    double scale_two) {
  const ComplexMatrix a = annihilation(dim);
  const Complex prefactor = 0.5 * p.omega_rabi * std::exp(-kI * p.xi);
  return prefactor * (p.c0 * scale_two * 0.5 * (a * a) + p.c1 * scale_single * a);
}

ComplexMatrix single_drive_hamiltonian(const SingleGateParams& p, const KpoParams& kpo, double t) {
  const ComplexMatrix h0 = build_kpo_hamiltonian(kpo);
  if (p.omega_rabi == 0.0) return h0;
  const ComplexMatrix q = single_drive_lowering(p, kpo.fock_dim);
  const Complex f = std::exp(-kI * p.omega_drive * t);
  const ComplexMatrix drive = f * q;
  return h0 + drive + drive.adjoint();
}

ComplexMatrix effective_hamiltonian(const DriveParams& p, const LogicalBasis& basis) {
  (void)basis;
  ComplexMatrix h = ComplexMatrix::Zero(3, 3);
  const Complex phase = std::exp(-kI * p.xi);
  const double half = 0.5 * p.omega_rabi;
  h(2, 1) = half * p.c0p * phase;
  h(2, 0) = half * p.c1p * phase;
  h(1, 2) = std::conj(h(2, 1));
  h(0, 2) = std::conj(h(2, 0));
  return h;
}

ComplexMatrix ideal_single_unitary(double theta, double phi) {
  ComplexMatrix u(2, 2);
  u << std::cos(theta), std::exp(-kI * phi) * std::sin(theta),
      std::exp(kI * phi) * std::sin(theta), -std::cos(theta);
  return u;
}

ComplexMatrix ideal_three_level_unitary(double omega_rabi, double t, const DarkBrightPair& pair) {
  ComplexVector d = ComplexVector::Zero(3), b = ComplexVector::Zero(3), e = ComplexVector::Zero(3);
  d.head(2) = pair.dark.amplitudes();
  b.head(2) = pair.bright.amplitudes();
  e(2) = 1.0;
  const double c = std::cos(0.5 * omega_rabi * t);
  const double s = std::sin(0.5 * omega_rabi * t);
  return d * d.adjoint() + c * (b * b.adjoint() + e * e.adjoint()) -
         kI * s * (e * b.adjoint() + b * e.adjoint());
}

ComplexMatrix in_dark_bright_basis(const ComplexMatrix& u, const DarkBrightPair& pair) {
  ComplexMatrix w = ComplexMatrix::Zero(3, 3);
  w.block(0, 0, 2, 1) = pair.dark.amplitudes();
  w.block(0, 1, 2, 1) = pair.bright.amplitudes();
  w(2, 2) = 1.0;
  return w.adjoint() * u * w;
}

ComplexMatrix ideal_two_qubit_unitary(double theta, double phi) {
  ComplexMatrix u = ComplexMatrix::Identity(4, 4);
  u.block(2, 2, 2, 2) = ideal_single_unitary(theta, phi);
  return u;
}

void require_composite_fits(Eigen::Index fock_dim, std::size_t max_entries) {
  const auto composite = static_cast<std::size_t>(fock_dim) * static_cast<std::size_t>(fock_dim);
  if (composite * composite > max_entries) {
    throw Error(ErrorKind::kMemoryGuard, "composite matrix with " +
                                             std::to_string(composite * composite) +
                                             " entries exceeds cap " + std::to_string(max_entries));
  }
}

TwoQubitDriveFactors two_qubit_drive_factors(const TwoQubitGateParams& p, Eigen::Index dim) {
  const ComplexMatrix a = annihilation(dim);
  const Complex prefactor = 0.5 * p.omega_rabi * std::exp(-kI * p.xi);
  return {a, a * a, a, prefactor * p.c0, prefactor * p.c1};
}

ComplexMatrix two_qubit_drive_hamiltonian(const TwoQubitGateParams& p, const KpoParams& kpo,
                                          double t, std::size_t max_entries) {
  require_composite_fits(kpo.fock_dim, max_entries);
  const ComplexMatrix h0 = build_kpo_hamiltonian(kpo);
  const Eigen::Index d = kpo.fock_dim;
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  ComplexMatrix h = kron(h0, id) + kron(id, h0);
  if (p.omega_rabi == 0.0) return h;
  const TwoQubitDriveFactors f = two_qubit_drive_factors(p, d);
  const ComplexMatrix q = f.weight_two * kron(f.control, f.target_two) +
                          f.weight_single * kron(f.control, f.target_single);
  const ComplexMatrix drive = std::exp(-kI * p.omega22 * t) * q;
  h += drive + drive.adjoint();
  return h;
}

}  // namespace kpo
