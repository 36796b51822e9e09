#pragma once

#include <functional>
#include <string>

#include <Eigen/Dense>

#include "geoswim/spline.hpp"

namespace geoswim {

/// Arclength / time discretization. Nodes s_i = i / segments, i = 0..segments;
/// time samples t_k = k / time_samples over one normalized period.
struct Grid {
  int segments = 100;
  int time_samples = 128;

  int nodes() const { return segments + 1; }
  double spacing() const { return 1.0 / segments; }
  double node(int i) const { return static_cast<double>(i) / segments; }
  double time(int k) const { return static_cast<double>(k) / time_samples; }
  double time_step() const { return 1.0 / time_samples; }

  /// Trapezoid weights over the nodes (sum to one body length).
  Eigen::VectorXd weights() const;
};

enum class ModeKind { spline, three_link, serpenoid, unit_modes };

std::string to_string(ModeKind kind);
ModeKind mode_kind_from_string(const std::string& name);

/// Spatial shape modes kappa_i(s). Spline and unit modes are driven by
/// control points on a natural cardinal basis; three-link and serpenoid modes
/// are closed-form and carry no control points.
class ModeSet {
 public:
  static ModeSet spline(Eigen::MatrixXd control_points);
  static ModeSet unit_modes(int count);
  /// Boxcar joints of the given width centered at s = 1/3 and s = 2/3, height 1/width.
  static ModeSet three_link(double width = 0.05);
  /// kappa_1 = sin(2 pi s), kappa_2 = cos(2 pi s).
  static ModeSet serpenoid();

  ModeKind kind() const { return kind_; }
  int count() const { return count_; }
  bool has_control_points() const { return kind_ == ModeKind::spline || kind_ == ModeKind::unit_modes; }
  const Eigen::MatrixXd& control_points() const { return control_points_; }
  const CardinalSplineBasis<double>& basis() const { return basis_; }
  double joint_width() const { return width_; }

  /// Mode values kappa_i(s), size count().
  Eigen::VectorXd values(double s) const;
  /// Cardinal basis row phi_j(s); empty for closed-form modes.
  Eigen::VectorXd basis_values(double s) const;

 private:
  ModeKind kind_{ModeKind::spline};
  int count_{0};
  Eigen::MatrixXd control_points_;
  CardinalSplineBasis<double> basis_;
  double width_{0.05};
};

ModeSet preset_modes(ModeKind kind, int count = 10);

/// Shape variables alpha_i(t), periodic with unit period.
class GaitTrajectory {
 public:
  GaitTrajectory() = default;
  explicit GaitTrajectory(Eigen::MatrixXd control_points);

  int count() const { return static_cast<int>(control_points_.rows()); }
  int points() const { return static_cast<int>(control_points_.cols()); }
  const Eigen::MatrixXd& control_points() const { return control_points_; }
  const CardinalSplineBasis<double>& basis() const { return basis_; }

  /// alpha(t) (order 0), alpha'(t) (order 1) or alpha''(t) (order 2).
  Eigen::VectorXd values(double t, int order = 0) const;

 private:
  Eigen::MatrixXd control_points_;
  CardinalSplineBasis<double> basis_;
};

/// Nodal curvature and curvature rate at one instant.
struct ShapeSample {
  Eigen::VectorXd curvature;
  Eigen::VectorXd curvature_rate;
};

/// Anything that produces a nodal shape sample for a time in [0, 1].
using ShapeHistory = std::function<ShapeSample(double)>;

/// d kappa(s,t) / d(control points). `modes` is empty for closed-form modes.
struct ControlJacobian {
  Eigen::MatrixXd modes;  // count x P
  Eigen::MatrixXd gait;   // count x Q
};

/// kappa(s, t) = sum_i kappa_i(s) alpha_i(t).
class CurvatureModel {
 public:
  /// Motionless serpenoid, a placeholder until a design is assigned.
  CurvatureModel();
  CurvatureModel(ModeSet modes, GaitTrajectory gait, Grid grid = {});

  const ModeSet& modes() const { return modes_; }
  const GaitTrajectory& gait() const { return gait_; }
  const Grid& grid() const { return grid_; }

  double curvature(double s, double t) const;
  double curvature_rate(double s, double t) const;
  ControlJacobian jacobian_controls(double s, double t) const;

  /// Mode values at the arclength nodes, count x nodes.
  const Eigen::MatrixXd& mode_table() const { return mode_table_; }
  /// Cardinal basis values at the nodes, nodes x P (empty for closed-form modes).
  const Eigen::MatrixXd& basis_table() const { return basis_table_; }

  ShapeSample sample(double t) const;
  ShapeHistory history() const;

  CurvatureModel with_gait(Eigen::MatrixXd gait_points) const;
  CurvatureModel with_modes(Eigen::MatrixXd mode_points) const;
  CurvatureModel with_grid(Grid grid) const;
  /// kappa -> -kappa.
  CurvatureModel mirrored() const;

 private:
  ModeSet modes_;
  GaitTrajectory gait_;
  Grid grid_;
  Eigen::MatrixXd mode_table_;
  Eigen::MatrixXd basis_table_;
};

/// Nodal curvature grid, nodes x time_samples.
Eigen::MatrixXd curvature_grid(const CurvatureModel& model);

/// Smallest uniform scale for alpha_c that keeps max |kappa| on the grid
/// within `bound`; returns 1 when already feasible.
double curvature_bound_scale(const CurvatureModel& model, double bound);

}  // namespace geoswim
