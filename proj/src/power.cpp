#include "geoswim/power.hpp"

#include <cmath>
#include <stdexcept>

#include "geoswim/errors.hpp"

namespace geoswim {

namespace {

Eigen::Matrix3Xd solved_velocities(const ShapeSample& shape, const Grid& grid, const Regime& regime, BaseFrame base) {
  Eigen::Matrix3Xd sections;
  solve_section_velocities(backbone_state(shape.curvature, grid, base), regime, shape.curvature_rate, sections);
  return sections;
}

// 4th-order central difference weights for f'(t) at offsets -2..2.
constexpr double kStencil[5] = {1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0};

// Section-frame inertial acceleration from velocity samples around one time.
Eigen::Matrix3Xd section_acceleration(const Eigen::Matrix3Xd* window[5], double dt) {
  const Eigen::Matrix3Xd& v = *window[2];
  Eigen::Matrix3Xd rate = Eigen::Matrix3Xd::Zero(3, v.cols());
  for (int m = 0; m < 5; ++m) {
    if (kStencil[m] != 0.0) rate += (kStencil[m] / dt) * (*window[m]);
  }
  Eigen::Matrix3Xd a(3, v.cols());
  a.row(0) = rate.row(0) - v.row(2).cwiseProduct(v.row(1));
  a.row(1) = rate.row(1) + v.row(2).cwiseProduct(v.row(0));
  a.row(2) = rate.row(2);
  return a;
}

double weighted_quadratic(const Eigen::Matrix3Xd& a, const Eigen::Matrix3d& metric, const Eigen::VectorXd& w) {
  return ((metric * a).cwiseProduct(a).colwise().sum().transpose()).dot(w);
}

const HighReynolds& require_high(const Regime& regime) {
  if (is_low_reynolds(regime)) throw std::invalid_argument("covariant acceleration cost needs a high-Re regime");
  return std::get<HighReynolds>(regime);
}

}  // namespace

std::vector<Eigen::Matrix3Xd> section_velocities(const CurvatureModel& model, const Regime& regime, BaseFrame base) {
  const Grid& grid = model.grid();
  std::vector<Eigen::Matrix3Xd> out(grid.time_samples);
  for (int k = 0; k < grid.time_samples; ++k) out[k] = solved_velocities(model.sample(grid.time(k)), grid, regime, base);
  return out;
}

double drag_power(const Eigen::Matrix3Xd& velocities, const Eigen::Matrix3d& metric, const Eigen::VectorXd& weights) {
  return weighted_quadratic(velocities, metric, weights);
}

double dissipated_power(const CurvatureModel& model, const Regime& regime, double t, BaseFrame base) {
  if (!is_low_reynolds(regime)) throw std::invalid_argument("dissipated power needs a low-Re regime");
  const Eigen::Matrix3Xd v = solved_velocities(model.sample(t), model.grid(), regime, base);
  return drag_power(v, local_metric(regime), model.grid().weights());
}

CostBreakdown acceleration_cost(const std::vector<Eigen::Matrix3Xd>& velocities, const Eigen::Matrix3d& metric,
                                const Eigen::VectorXd& weights) {
  const int samples = static_cast<int>(velocities.size());
  if (samples < 5) throw std::invalid_argument("acceleration cost needs at least 5 time samples");
  const double dt = 1.0 / samples;
  Eigen::Matrix3d rotational = Eigen::Matrix3d::Zero();
  rotational(2, 2) = metric(2, 2);
  CostBreakdown out;
  out.regime = "high";
  out.instantaneous.resize(samples);
  for (int k = 0; k < samples; ++k) {
    const Eigen::Matrix3Xd* window[5];
    for (int m = 0; m < 5; ++m) window[m] = &velocities[(k + m - 2 + samples) % samples];
    const Eigen::Matrix3Xd a = section_acceleration(window, dt);
    out.instantaneous(k) = weighted_quadratic(a, metric, weights);
    out.rotational_cost += dt * weighted_quadratic(a, rotational, weights);
  }
  out.cycle_cost = dt * out.instantaneous.sum();
  return out;
}

double covariant_acceleration_power(const CurvatureModel& model, const Regime& regime, double t, BaseFrame base) {
  require_high(regime);
  const Grid& grid = model.grid();
  const double dt = grid.time_step();
  Eigen::Matrix3Xd samples[5];
  const Eigen::Matrix3Xd* window[5];
  for (int m = 0; m < 5; ++m) {
    samples[m] = solved_velocities(model.sample(t + (m - 2) * dt), grid, regime, base);
    window[m] = &samples[m];
  }
  return weighted_quadratic(section_acceleration(window, dt), local_metric(regime), grid.weights());
}

CostBreakdown covariant_acceleration_cost(const CurvatureModel& model, const Regime& regime, BaseFrame base) {
  require_high(regime);
  return acceleration_cost(section_velocities(model, regime, base), local_metric(regime), model.grid().weights());
}

CostBreakdown cycle_cost(const CurvatureModel& model, const Regime& regime, BaseFrame base) {
  if (!is_low_reynolds(regime)) return covariant_acceleration_cost(model, regime, base);
  const Grid& grid = model.grid();
  const Eigen::Matrix3d metric = local_metric(regime);
  const Eigen::VectorXd w = grid.weights();
  CostBreakdown out;
  out.regime = "low";
  out.instantaneous.resize(grid.time_samples);
  const std::vector<Eigen::Matrix3Xd> velocities = section_velocities(model, regime, base);
  for (int k = 0; k < grid.time_samples; ++k) out.instantaneous(k) = drag_power(velocities[k], metric, w);
  out.cycle_cost = grid.time_step() * out.instantaneous.sum();
  return out;
}

double displacement_component(const Pose2d& g, Direction component) {
  switch (component) {
    case Direction::x: return g.x;
    case Direction::y: return g.y;
    case Direction::theta: return g.theta;
  }
  return g.x;
}

EfficiencyReport efficiency(const CurvatureModel& model, const Regime& regime, const EfficiencyOptions& options) {
  EfficiencyReport report;
  report.component = options.component;
  report.displacement = integrate_trajectory(model, regime, options.trajectory);
  report.cost = cycle_cost(model, regime, options.trajectory.base);
  if (options.with_approximation) {
    ApproximationOptions approx;
    approx.base = options.trajectory.base;
    report.approximation = displacement_approx(model, regime, approx);
  }
  const double progress = std::abs(displacement_component(report.displacement, options.component));
  const double cost = report.cost.cycle_cost;
  if (!std::isfinite(progress) || !std::isfinite(cost)) {
    throw NumericalError("power_and_efficiency", "non-finite displacement or cost");
  }
  if (cost > 0.0) {
    report.efficiency = progress / cost;
  } else if (progress > 1e-12) {
    throw NumericalError("power_and_efficiency", "nonzero displacement at zero cost");
  }
  return report;
}

}  // namespace geoswim
