#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "geoswim/hydrodynamics.hpp"
#include "geoswim/optimizer.hpp"
#include "geoswim/shape.hpp"

namespace geoswim::fixtures {

inline Eigen::MatrixXd uniform_matrix(int rows, int cols, std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = u(rng);
  }
  return m;
}

/// Two random spline modes with a smooth random gait, rescaled so that
/// max |kappa| on the grid equals peak.
inline CurvatureModel random_model(std::uint64_t seed, double peak = 1.0, Grid grid = {}, int modes = 2,
                                   int mode_points = 8, int gait_points = 8) {
  std::mt19937_64 rng(seed);
  const Eigen::MatrixXd shape = uniform_matrix(modes, mode_points, rng, 1.0);
  const Eigen::MatrixXd gait = random_gait(modes, gait_points, seed + 7777, 0.5);
  CurvatureModel model(ModeSet::spline(shape), GaitTrajectory(gait), grid);
  const double current = curvature_grid(model).cwiseAbs().maxCoeff();
  return model.with_gait(gait * (peak / current));
}

/// Serpenoid modes driven around a circle of radius `amplitude`.
inline CurvatureModel circular_serpenoid(double amplitude, int points = 10, Grid grid = {}) {
  Eigen::MatrixXd gait(2, points);
  for (int q = 0; q < points; ++q) {
    const double phase = 2.0 * M_PI * q / points;
    gait(0, q) = amplitude * std::cos(phase);
    gait(1, q) = amplitude * std::sin(phase);
  }
  return CurvatureModel(ModeSet::serpenoid(), GaitTrajectory(gait), grid);
}

inline Regime regime_by_index(int i) { return i == 0 ? Regime{LowReynolds{}} : Regime{HighReynolds{}}; }

}  // namespace geoswim::fixtures
