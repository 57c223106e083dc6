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

#include "kpo/kpo_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "kpo/error.hpp"

namespace kpo {

namespace {

// Fock levels at the top of the truncation that must stay empty.
constexpr Eigen::Index kTailLevels = 3;
constexpr double kTailMass = 1e-10;

void require_small_tail(const ComplexVector& v, const char* what) {
  const Eigen::Index n = std::min<Eigen::Index>(kTailLevels, v.size());
  const double tail = v.tail(n).squaredNorm() / v.squaredNorm();
  if (tail > kTailMass) {
    throw Error(ErrorKind::kTruncationTooSmall,
                std::string(what) + " tail mass " + std::to_string(tail) + " at truncation edge");
  }
}

void require_parity(int parity) {
  if (parity != 1 && parity != -1) {
    throw Error(ErrorKind::kInvalidArgument, "parity must be ±1");
  }
}

}  // namespace

KpoParams KpoParams::from_alpha_squared(double alpha_squared, Eigen::Index fock_dim, double kerr) {
  KpoParams p;
  p.kerr = kerr;
  p.drive = kerr * alpha_squared;
  p.alpha = std::sqrt(alpha_squared);
  p.fock_dim = fock_dim;
  p.validate();
  return p;
}

KpoParams KpoParams::from_drive(double kerr, double drive, Eigen::Index fock_dim) {
  KpoParams p;
  p.kerr = kerr;
  p.drive = drive;
  p.alpha = kerr > 0.0 && drive >= 0.0 ? std::sqrt(drive / kerr) : 0.0;
  p.fock_dim = fock_dim;
  p.validate();
  return p;
}

void KpoParams::validate() const {
  if (!(kerr > 0.0) || !std::isfinite(kerr)) {
    throw Error(ErrorKind::kInvalidArgument, "kerr must be > 0");
  }
  if (!(drive >= 0.0) || !std::isfinite(drive)) {
    throw Error(ErrorKind::kInvalidArgument, "drive must be ≥ 0");
  }
  if (!(alpha >= 0.0)) throw Error(ErrorKind::kInvalidArgument, "alpha must be ≥ 0");
  if (std::abs(alpha * alpha * kerr - drive) > 1e-12 * std::max(1.0, drive)) {
    throw Error(ErrorKind::kInvalidArgument, "alpha² · kerr ≠ drive");
  }
  if (fock_dim < 2) throw Error(ErrorKind::kInvalidDimension, "fock_dim must be ≥ 2");
  require_safe_truncation(alpha, fock_dim);
}

// ------------------------------------------------------------ SpectrumReport

const SpectrumLevel& SpectrumReport::level(int pair, int parity) const {
  for (const auto& l : levels) {
    if (l.index_within_parity == pair && l.parity == parity) return l;
  }
  throw Error(ErrorKind::kInvalidArgument, "no level (" + std::to_string(pair) + ", " +
                                               std::to_string(parity) + ") in spectrum");
}

double SpectrumReport::pair_center(int pair) const {
  return 0.5 * (level(pair, +1).energy + level(pair, -1).energy);
}

double SpectrumReport::excitation_gap(int pair) const {
  return pair_center(0) - pair_center(pair);
}

ComplexMatrix SpectrumReport::basis_matrix() const {
  const Eigen::Index d = levels.empty() ? 0 : levels.front().eigenvector.dim();
  ComplexMatrix v(d, static_cast<Eigen::Index>(levels.size()));
  for (std::size_t j = 0; j < levels.size(); ++j) {
    v.col(static_cast<Eigen::Index>(j)) = levels[j].eigenvector.amplitudes();
  }
  return v;
}

RealVector SpectrumReport::energies() const {
  RealVector e(static_cast<Eigen::Index>(levels.size()));
  for (std::size_t j = 0; j < levels.size(); ++j) e(static_cast<Eigen::Index>(j)) = levels[j].energy;
  return e;
}

Complex LogicalBasis::matrix_element(int j, const ComplexMatrix& op, int k) const {
  return ket(j).amplitudes().dot(op * ket(k).amplitudes());
}

// ------------------------------------------------------------------- builders

ComplexMatrix build_kpo_hamiltonian(const KpoParams& p) {
  p.validate();
  const ComplexMatrix a = annihilation(p.fock_dim);
  const ComplexMatrix ad = a.adjoint();
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix ad2 = ad * ad;
  return -p.kerr * ad2 * a2 + p.drive * (a2 + ad2);
}

double cat_normalization(double alpha, int parity) {
  require_parity(parity);
  const double overlap = std::exp(-2.0 * alpha * alpha);
  const double denom = 2.0 * (1.0 + parity * overlap);
  if (!(denom > 0.0)) {
    throw Error(ErrorKind::kDegenerateState, "odd cat has zero norm at α = 0");
  }
  return 1.0 / std::sqrt(denom);
}

StateVector coherent_state(Complex alpha, Eigen::Index dim) {
  ComplexVector v = displacement(alpha, dim).col(0);
  require_small_tail(v, "coherent state");
  return StateVector::normalized(std::move(v));
}

StateVector cat_state(double alpha, int parity, Eigen::Index dim) {
  require_parity(parity);
  const double n = cat_normalization(alpha, parity);
  const ComplexMatrix d_plus = displacement(alpha, dim);
  const ComplexMatrix d_minus = displacement(-alpha, dim);
  ComplexVector v = n * (d_plus.col(0) + static_cast<double>(parity) * d_minus.col(0));
  require_small_tail(v, "cat state");
  return StateVector(std::move(v));
}

StateVector shifted_fock_state(int n, int parity, const KpoParams& p) {
  require_parity(parity);
  p.validate();
  if (n < 0 || n >= p.fock_dim) throw Error(ErrorKind::kInvalidArgument, "Fock index out of range");
  const ComplexMatrix d_plus = displacement(p.alpha, p.fock_dim);
  const ComplexMatrix d_minus = displacement(-p.alpha, p.fock_dim);
  const double sign = parity * ((n % 2 == 0) ? 1.0 : -1.0);
  ComplexVector v = d_plus.col(n) + sign * d_minus.col(n);
  if (v.norm() < 1e-12) {
    throw Error(ErrorKind::kDegenerateState,
                "shifted Fock combination (" + std::to_string(n) + ", " + std::to_string(parity) +
                    ") vanishes");
  }
  require_small_tail(v, "shifted Fock state");
  ComplexVector normalized = v / v.norm();
  fix_global_phase(normalized);
  return StateVector(std::move(normalized));
}

SpectrumReport compute_spectrum(const KpoParams& p) {
  const ComplexMatrix h = build_kpo_hamiltonian(p);
  const ComplexMatrix parity = parity_operator(p.fock_dim);
  EigenSystem es = hermitian_eig(h);
  const Eigen::Index d = p.fock_dim;

  // Degenerate eigenspaces (the cat doublet first of all) come back as
  // arbitrary mixtures; rotate each cluster onto parity eigenstates.
  const double cluster_tol = 1e-9 * std::max(1.0, max_abs(h));
  Eigen::Index start = 0;
  while (start < d) {
    Eigen::Index end = start + 1;
    while (end < d && es.eigenvalues(end) - es.eigenvalues(end - 1) <= cluster_tol) ++end;
    const Eigen::Index size = end - start;
    if (size > 1) {
      const ComplexMatrix block = es.eigenvectors.middleCols(start, size);
      const ComplexMatrix projected = block.adjoint() * parity * block;
      const EigenSystem local = hermitian_eig(0.5 * (projected + projected.adjoint()));
      es.eigenvectors.middleCols(start, size) = block * local.eigenvectors;
      for (Eigen::Index j = start; j < end; ++j) fix_global_phase(es.eigenvectors.col(j));
    }
    start = end;
  }

  struct Labeled {
    double energy;
    int parity;
    Eigen::Index column;
  };
  std::vector<Labeled> even, odd;
  for (Eigen::Index j = 0; j < d; ++j) {
    const ComplexVector v = es.eigenvectors.col(j);
    const double expectation = v.dot(parity * v).real();
    if (std::abs(expectation) < 0.99) {
      throw Error(ErrorKind::kClassification,
                  "eigenvector " + std::to_string(j) + " has ambiguous parity ⟨Π⟩ = " +
                      std::to_string(expectation));
    }
    (expectation > 0 ? even : odd).push_back({es.eigenvalues(j), expectation > 0 ? 1 : -1, j});
  }
  const auto descending = [](const Labeled& a, const Labeled& b) { return a.energy > b.energy; };
  std::sort(even.begin(), even.end(), descending);
  std::sort(odd.begin(), odd.end(), descending);

  SpectrumReport report;
  const std::size_t pairs = std::max(even.size(), odd.size());
  for (std::size_t n = 0; n < pairs; ++n) {
    for (const auto* sector : {&even, &odd}) {
      if (n >= sector->size()) continue;
      const Labeled& l = (*sector)[n];
      report.levels.push_back(SpectrumLevel{l.energy, l.parity, static_cast<int>(n),
                                            StateVector::normalized(es.eigenvectors.col(l.column))});
    }
    if (n < even.size() && n < odd.size()) report.gaps.push_back(even[n].energy - odd[n].energy);
  }
  return report;
}

LogicalBasis logical_basis(const KpoParams& p) {
  LogicalBasis basis;
  basis.params = p;
  basis.spectrum = compute_spectrum(p);
  const auto& s = basis.spectrum;
  const std::array<std::pair<int, int>, 4> labels{{{0, +1}, {0, -1}, {1, +1}, {1, -1}}};
  for (std::size_t k = 0; k < 4; ++k) {
    const SpectrumLevel& l = s.level(labels[k].first, labels[k].second);
    basis.kets[k] = l.eigenvector;
    basis.energies[k] = l.energy;
  }
  const ComplexMatrix a = annihilation(p.fock_dim);
  basis.m_t = basis.matrix_element(0, a * a, 2) / 2.0;
  basis.m_s = basis.matrix_element(1, a, 2);
  return basis;
}

}  // namespace kpo
