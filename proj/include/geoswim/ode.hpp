#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "geoswim/errors.hpp"

namespace geoswim {

struct OdeOptions {
  double relative_tolerance = 1e-8;
  double absolute_tolerance = 1e-10;
  double initial_step = 1e-2;
  double min_step = 1e-12;
  int max_steps = 1000000;
};

struct OdeStats {
  int accepted = 0;
  int rejected = 0;
  int evaluations = 0;
};

/// Adaptive Dormand-Prince 5(4) integration of y' = f(t, y) from t0 to t1.
/// Throws NumericalError when the step size underflows.
template <int N, typename Rhs>
Eigen::Matrix<double, N, 1> integrate_dopri5(Rhs&& f, Eigen::Matrix<double, N, 1> y, double t0, double t1,
                                             const OdeOptions& options = {}, OdeStats* stats = nullptr) {
  using Vec = Eigen::Matrix<double, N, 1>;
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  OdeStats local;
  double t = t0;
  double h = std::min(options.initial_step, t1 - t0);
  Vec k1 = f(t, y);
  ++local.evaluations;
  while (t < t1) {
    if (local.accepted + local.rejected > options.max_steps) {
      throw NumericalError("locomotion_fields", "step limit exceeded at t = " + std::to_string(t));
    }
    if (h < options.min_step) {
      throw NumericalError("locomotion_fields", "step size underflow at t = " + std::to_string(t));
    }
    const bool last = t + h >= t1;
    if (last) h = t1 - t;
    const Vec k2 = f(t + c2 * h, Vec(y + h * a21 * k1));
    const Vec k3 = f(t + c3 * h, Vec(y + h * (a31 * k1 + a32 * k2)));
    const Vec k4 = f(t + c4 * h, Vec(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
    const Vec k5 = f(t + c5 * h, Vec(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
    const Vec k6 = f(t + h, Vec(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
    const Vec next = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Vec k7 = f(t + h, next);
    local.evaluations += 6;
    const Vec err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double norm = 0.0;
    for (int i = 0; i < y.size(); ++i) {
      const double scale =
          options.absolute_tolerance + options.relative_tolerance * std::max(std::abs(y(i)), std::abs(next(i)));
      norm = std::max(norm, std::abs(err(i)) / scale);
    }
    if (norm <= 1.0) {
      t = last ? t1 : t + h;
      y = next;
      k1 = k7;
      ++local.accepted;
      const double grow = norm == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(norm, -0.2));
      h *= grow;
    } else {
      ++local.rejected;
      h *= std::max(0.2, 0.9 * std::pow(norm, -0.2));
    }
  }
  if (stats) *stats = local;
  return y;
}

}  // namespace geoswim
