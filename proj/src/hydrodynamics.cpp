#include "geoswim/hydrodynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "geoswim/errors.hpp"

namespace geoswim {

std::string regime_name(const Regime& regime) { return is_low_reynolds(regime) ? "low" : "high"; }

Eigen::Matrix3d local_metric(const Regime& regime) {
  if (const auto* low = std::get_if<LowReynolds>(&regime)) {
    if (!(low->drag_ratio > 0.0)) throw std::invalid_argument("drag ratio must be positive");
    return Eigen::Vector3d(1.0, low->drag_ratio, 0.0).asDiagonal();
  }
  const auto& high = std::get<HighReynolds>(regime);
  if (!(high.density > 0.0)) throw std::invalid_argument("fluid density must be positive");
  if (!(high.radius > 0.0 && high.radius < 0.5)) throw std::invalid_argument("cross-section radius must be in (0, 0.5)");
  const double area = M_PI * high.radius * high.radius;
  const double mass = high.density * area;
  // body mass plus added mass of a circle in the lateral direction
  return Eigen::Vector3d(mass, 2.0 * mass, 0.25 * mass * high.radius * high.radius).asDiagonal();
}

MetricField pullback_blocks(const BackboneState& state, const Regime& regime) {
  const int n = state.nodes();
  const double h = state.spacing;
  MetricField field;
  field.metric = local_metric(regime);
  field.base_base.resize(n);
  field.integrated.setZero();
  std::vector<Eigen::Matrix3d> weighted(n);
  for (int i = 0; i < n; ++i) {
    const Eigen::Matrix3d ad = state.adjoint_inverse(i);
    field.base_base[i].noalias() = ad.transpose() * (field.metric.diagonal().asDiagonal() * ad);
    weighted[i] = state.weights(i) * field.base_base[i];
    field.integrated += weighted[i];
  }
  // Adjoint of the segment chain: segment j moves every node past it with the
  // rotation twist about its pivot, at rate h (k_t(j) + k_t(j + 1)) / 2.
  const bool center = state.base_kind == BaseFrame::geometric_center;
  field.base_shape = Eigen::Matrix3Xd::Zero(3, n);
  Eigen::Matrix3d tail_metric = Eigen::Matrix3d::Zero();
  Eigen::Vector3d moment = Eigen::Vector3d::Zero();  // sum of w (x, y, 1) past the segment
  for (int j = n - 2; j >= 0; --j) {
    const Pose2d& g = state.frames[j + 1];
    tail_metric += weighted[j + 1];
    moment += state.weights(j + 1) * Eigen::Vector3d(g.x, g.y, 1.0);
    const double px = state.pivots(0, j), py = state.pivots(1, j);
    Eigen::Vector3d v = tail_metric * Eigen::Vector3d(py, -px, 1.0);
    if (center) v -= field.integrated * Eigen::Vector3d(moment(2) * py - moment(1), moment(0) - moment(2) * px, moment(2));
    field.base_shape.col(j) += 0.5 * h * v;
    field.base_shape.col(j + 1) += 0.5 * h * v;
  }
  for (int j = 0; j < n; ++j) field.base_shape.col(j) /= state.weights(j);
  return field;
}

Eigen::LLT<Eigen::Matrix3d> factor_integrated_metric(const Eigen::Matrix3d& integrated, double* condition) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig;
  eig.computeDirect(integrated, Eigen::EigenvaluesOnly);
  const Eigen::Vector3d lambda = eig.eigenvalues();
  if (!(lambda(0) > 0.0)) throw NumericalError("hydrodynamic_metrics", "integrated metric is singular");
  const double ratio = lambda(2) / lambda(0);
  if (!(ratio <= kConditionLimit)) {
    throw NumericalError("hydrodynamic_metrics",
                         "integrated metric is ill-conditioned (condition " + std::to_string(ratio) + ")");
  }
  if (condition) *condition = ratio;
  return integrated.llt();
}

ConnectionField local_connection(const MetricField& field) {
  ConnectionField out;
  out.values = -factor_integrated_metric(field.integrated, &out.condition).solve(field.base_shape);
  return out;
}

Twist2d solve_section_velocities(const BackboneState& state, const Regime& regime,
                                 const Eigen::VectorXd& curvature_rate, Eigen::Matrix3Xd& sections) {
  const int n = state.nodes();
  const Eigen::Matrix3d mu = local_metric(regime);
  sections = base_twists(state, curvature_rate);
  Eigen::Matrix3d integrated = Eigen::Matrix3d::Zero();
  Eigen::Vector3d shape_term = Eigen::Vector3d::Zero();
  const Eigen::Vector3d d = mu.diagonal();  // both regimes have diagonal metrics
  for (int i = 0; i < n; ++i) {
    const Eigen::Matrix3d ad = state.adjoint_inverse(i);
    const Eigen::Matrix3d scaled = (state.weights(i) * d).asDiagonal() * ad;
    integrated.noalias() += ad.transpose() * scaled;
    shape_term.noalias() += scaled.transpose() * (ad * sections.col(i));
  }
  const Twist2d xi = -factor_integrated_metric(integrated).solve(shape_term);
  for (int i = 0; i < n; ++i) sections.col(i) = state.adjoint_inverse(i) * (xi + sections.col(i));
  return xi;
}

ConnectionField connection_at(const Eigen::VectorXd& curvature, const Grid& grid, const Regime& regime,
                              BaseFrame base) {
  return local_connection(pullback_blocks(backbone_state(curvature, grid, base), regime));
}

Twist2d body_velocity(const ConnectionField& connection, const Eigen::VectorXd& curvature_rate,
                      const Eigen::VectorXd& weights) {
  return connection.values * curvature_rate.cwiseProduct(weights);
}

Twist2d body_velocity(const ShapeSample& shape, const Grid& grid, const Regime& regime, BaseFrame base) {
  return body_velocity(connection_at(shape.curvature, grid, regime, base), shape.curvature_rate, grid.weights());
}

Twist2d body_velocity(const CurvatureModel& model, const Regime& regime, double t, BaseFrame base) {
  return body_velocity(model.sample(t), model.grid(), regime, base);
}

Twist2d stationarity_residual(const MetricField& field, const Twist2d& xi_base, const Eigen::VectorXd& curvature_rate,
                              const Eigen::VectorXd& weights) {
  return field.integrated * xi_base + field.base_shape * curvature_rate.cwiseProduct(weights);
}

}  // namespace geoswim
