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

#include "kpo/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kpo/error.hpp"

namespace kpo {

void EvolutionConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "integrator tolerances must be positive");
  }
  if (max_step && !(*max_step > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "max_step must be positive");
  }
  if (max_steps <= 0) throw Error(ErrorKind::kInvalidArgument, "max_steps must be positive");
}

void IntegratorStats::merge(const IntegratorStats& other) {
  if (accepted == 0) {
    smallest_step = other.smallest_step;
    largest_step = other.largest_step;
  } else if (other.accepted > 0) {
    smallest_step = std::min(smallest_step, other.smallest_step);
    largest_step = std::max(largest_step, other.largest_step);
  }
  accepted += other.accepted;
  rejected += other.rejected;
  rhs_evaluations += other.rhs_evaluations;
}

namespace {

void record_step(IntegratorStats& s, double h) {
  if (s.accepted == 0) {
    s.smallest_step = h;
    s.largest_step = h;
  } else {
    s.smallest_step = std::min(s.smallest_step, h);
    s.largest_step = std::max(s.largest_step, h);
  }
  ++s.accepted;
}

ComplexMatrix rk4(const MatrixRhs& f, ComplexMatrix y, double t0, double t1, double max_step,
                  IntegratorStats& st) {
  const double span = t1 - t0;
  const auto n = static_cast<std::int64_t>(std::ceil(span / max_step - 1e-12));
  const std::int64_t steps = std::max<std::int64_t>(n, 1);
  const double h = span / static_cast<double>(steps);
  ComplexMatrix k1(y.rows(), y.cols()), k2 = k1, k3 = k1, k4 = k1, tmp;
  for (std::int64_t i = 0; i < steps; ++i) {
    const double t = t0 + static_cast<double>(i) * h;
    f(t, y, k1);
    tmp = y + (0.5 * h) * k1;
    f(t + 0.5 * h, tmp, k2);
    tmp = y + (0.5 * h) * k2;
    f(t + 0.5 * h, tmp, k3);
    tmp = y + h * k3;
    f(t + h, tmp, k4);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    st.rhs_evaluations += 4;
    record_step(st, h);
  }
  return y;
}

// Dormand–Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

double error_norm(const ComplexMatrix& err, const ComplexMatrix& y0, const ComplexMatrix& y1,
                  double atol, double rtol) {
  double acc = 0.0;
  const Eigen::Index n = err.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double scale = atol + rtol * std::max(std::abs(y0(i)), std::abs(y1(i)));
    const double r = std::abs(err(i)) / scale;
    acc += r * r;
  }
  return std::sqrt(acc / static_cast<double>(n));
}

ComplexMatrix dopri(const MatrixRhs& f, ComplexMatrix y, double t0, double t1, double max_step,
                    const EvolutionConfig& cfg, IntegratorStats& st) {
  const double span = t1 - t0;
  const double h_min = cfg.min_step_fraction * span;
  ComplexMatrix k1(y.rows(), y.cols()), k2 = k1, k3 = k1, k4 = k1, k5 = k1, k6 = k1, k7 = k1;
  ComplexMatrix tmp, y_new, err;

  f(t0, y, k1);
  st.rhs_evaluations += 1;

  // Initial step from the scaled derivative norms.
  double h;
  {
    const ComplexMatrix zero = ComplexMatrix::Zero(y.rows(), y.cols());
    const double d0 = error_norm(y, y, zero, cfg.abs_tol, cfg.rel_tol);
    const double d1 = error_norm(k1, y, zero, cfg.abs_tol, cfg.rel_tol);
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * span : 0.01 * d0 / d1;
    h = std::min({h, max_step, span});
  }

  double t = t0;
  double err_prev = 1e-4;
  bool last_rejected = false;
  std::int64_t iterations = 0;
  while (t < t1) {
    if (++iterations > cfg.max_steps) {
      throw Error(ErrorKind::kStiffness, "step budget exhausted at t = " + std::to_string(t));
    }
    if (h < h_min) {
      throw Error(ErrorKind::kStiffness, "step size underflow at t = " + std::to_string(t));
    }
    bool final_step = false;
    if (t + h >= t1 || t1 - (t + h) < 1e-12 * span) {
      h = t1 - t;
      final_step = true;
    }
    tmp = y + h * (a21 * k1);
    f(t + c2 * h, tmp, k2);
    tmp = y + h * (a31 * k1 + a32 * k2);
    f(t + c3 * h, tmp, k3);
    tmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    f(t + c4 * h, tmp, k4);
    tmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    f(t + c5 * h, tmp, k5);
    tmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    f(t + h, tmp, k6);
    y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    f(t + h, y_new, k7);
    st.rhs_evaluations += 6;
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double en = error_norm(err, y, y_new, cfg.abs_tol, cfg.rel_tol);
    if (!std::isfinite(en)) {
      throw Error(ErrorKind::kIntegratorFailure, "non-finite state at t = " + std::to_string(t));
    }

    if (en <= 1.0) {
      // PI step-size control (Hairer & Wanner, β = 0.04).
      double fac = 0.9 * std::pow(en, -0.7 / 5.0) * std::pow(err_prev, 0.04);
      if (en == 0.0) fac = 5.0;
      fac = std::clamp(fac, 0.2, 5.0);
      if (last_rejected) fac = std::min(fac, 1.0);
      record_step(st, h);
      t = final_step ? t1 : t + h;
      y.swap(y_new);
      k1.swap(k7);
      err_prev = std::max(en, 1e-4);
      last_rejected = false;
      h = std::min(h * fac, max_step);
    } else {
      ++st.rejected;
      const double fac = std::max(0.2, 0.9 * std::pow(en, -0.2));
      h *= fac;
      last_rejected = true;
    }
  }
  return y;
}

}  // namespace

ComplexMatrix integrate(const MatrixRhs& rhs, ComplexMatrix y0, double t0, double t1,
                        const EvolutionConfig& cfg, double default_max_step,
                        IntegratorStats* stats) {
  cfg.validate();
  if (!(t1 > t0)) throw Error(ErrorKind::kInvalidArgument, "integration requires t1 > t0");
  const double max_step = std::min(cfg.max_step.value_or(default_max_step), t1 - t0);
  if (!(max_step > 0.0)) throw Error(ErrorKind::kInvalidArgument, "max_step must be positive");
  IntegratorStats local;
  ComplexMatrix out = cfg.method == IntegratorMethod::kFixedRk4
                          ? rk4(rhs, std::move(y0), t0, t1, max_step, local)
                          : dopri(rhs, std::move(y0), t0, t1, max_step, cfg, local);
  if (stats) stats->merge(local);
  return out;
}

}  // namespace kpo
