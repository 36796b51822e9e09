#pragma once

#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "geoswim/backbone.hpp"
#include "geoswim/shape.hpp"

namespace geoswim {

/// Viscous-dominated swimming; drag_ratio is lateral over axial drag.
struct LowReynolds {
  double drag_ratio = 2.0;
};

/// Inertia-dominated swimming of a neutrally buoyant slender body with a
/// circular cross-section of the given radius (body lengths).
struct HighReynolds {
  double density = 1.0;
  double radius = 1.0 / 200.0;
};

using Regime = std::variant<LowReynolds, HighReynolds>;

inline bool is_low_reynolds(const Regime& regime) { return std::holds_alternative<LowReynolds>(regime); }
std::string regime_name(const Regime& regime);

/// Per-arclength metric: diag(1, k, 0) at low Re, diag(rho pi r^2, 2 rho pi r^2, rho pi r^4 / 4) at high Re.
Eigen::Matrix3d local_metric(const Regime& regime);

/// Pulled-back metric blocks at one instant.
struct MetricField {
  Eigen::Matrix3d metric;
  std::vector<Eigen::Matrix3d> base_base;  // M_gg per node
  Eigen::Matrix3Xd base_shape;             // M_gk per node
  Eigen::Matrix3d integrated;              // trapezoid integral of M_gg
};

/// M_gg = Ad_{g^{-1}}^T mu Ad_{g^{-1}}. M_gk is the discrete adjoint of the
/// segment chain used for the group velocities, so that
/// sum_j w_j M_gk_j kappa_t_j equals sum_i w_i M_gg_i sigma_i exactly.
MetricField pullback_blocks(const BackboneState& state, const Regime& regime);

struct ConnectionField {
  Eigen::Matrix3Xd values;  // A(s_j) per node
  double condition = 1.0;   // condition number of the integrated M_gg
};

inline constexpr double kConditionLimit = 1e12;

/// A = -(int M_gg)^{-1} M_gk. Throws NumericalError when the integrated metric
/// is singular or its condition number exceeds kConditionLimit.
ConnectionField local_connection(const MetricField& field);

/// Cholesky factor of an integrated metric, with the same singularity and
/// condition checks as local_connection.
Eigen::LLT<Eigen::Matrix3d> factor_integrated_metric(const Eigen::Matrix3d& integrated, double* condition = nullptr);

/// Base velocity and section body velocities at one instant without forming
/// the connection; the shape term enters as sum_i w_i M_gg_i sigma_i.
Twist2d solve_section_velocities(const BackboneState& state, const Regime& regime,
                                 const Eigen::VectorXd& curvature_rate, Eigen::Matrix3Xd& sections);

/// Connection for nodal curvature values.
ConnectionField connection_at(const Eigen::VectorXd& curvature, const Grid& grid, const Regime& regime,
                              BaseFrame base = BaseFrame::geometric_center);

/// xi_base = int A kappa_t ds (trapezoid over the nodes).
Twist2d body_velocity(const ConnectionField& connection, const Eigen::VectorXd& curvature_rate,
                      const Eigen::VectorXd& weights);

/// Base body velocity of a model at time t.
Twist2d body_velocity(const CurvatureModel& model, const Regime& regime, double t,
                      BaseFrame base = BaseFrame::geometric_center);
/// Same for an arbitrary shape sample.
Twist2d body_velocity(const ShapeSample& shape, const Grid& grid, const Regime& regime,
                      BaseFrame base = BaseFrame::geometric_center);

/// Residual int (M_gg xi_base + M_gk kappa_t) ds of the stationarity condition.
Twist2d stationarity_residual(const MetricField& field, const Twist2d& xi_base, const Eigen::VectorXd& curvature_rate,
                              const Eigen::VectorXd& weights);

}  // namespace geoswim
