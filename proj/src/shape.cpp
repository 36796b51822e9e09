#include "geoswim/shape.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace geoswim {

Eigen::VectorXd Grid::weights() const {
  if (segments < 2) throw std::invalid_argument("grid needs at least 2 segments");
  Eigen::VectorXd w = Eigen::VectorXd::Constant(nodes(), spacing());
  w(0) *= 0.5;
  w(segments) *= 0.5;
  return w;
}

std::string to_string(ModeKind kind) {
  switch (kind) {
    case ModeKind::spline: return "spline";
    case ModeKind::three_link: return "three_link";
    case ModeKind::serpenoid: return "serpenoid";
    case ModeKind::unit_modes: return "unit_modes";
  }
  return "spline";
}

ModeKind mode_kind_from_string(const std::string& name) {
  if (name == "spline") return ModeKind::spline;
  if (name == "three_link") return ModeKind::three_link;
  if (name == "serpenoid") return ModeKind::serpenoid;
  if (name == "unit_modes") return ModeKind::unit_modes;
  throw std::invalid_argument("unknown mode kind '" + name + "'");
}

ModeSet ModeSet::spline(Eigen::MatrixXd control_points) {
  if (control_points.rows() < 1) throw std::invalid_argument("mode set needs at least one mode");
  ModeSet set;
  set.kind_ = ModeKind::spline;
  set.count_ = static_cast<int>(control_points.rows());
  set.basis_ = build_mode_basis(static_cast<int>(control_points.cols()));
  set.control_points_ = std::move(control_points);
  return set;
}

ModeSet ModeSet::unit_modes(int count) {
  ModeSet set = spline(Eigen::MatrixXd::Identity(count, count));
  set.kind_ = ModeKind::unit_modes;
  return set;
}

ModeSet ModeSet::three_link(double width) {
  if (!(width > 0.0 && width < 1.0 / 3.0)) throw std::invalid_argument("three-link joint width out of range");
  ModeSet set;
  set.kind_ = ModeKind::three_link;
  set.count_ = 2;
  set.width_ = width;
  return set;
}

ModeSet ModeSet::serpenoid() {
  ModeSet set;
  set.kind_ = ModeKind::serpenoid;
  set.count_ = 2;
  return set;
}

Eigen::VectorXd ModeSet::values(double s) const {
  switch (kind_) {
    case ModeKind::three_link: {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(2);
      const double half = 0.5 * width_;
      if (std::abs(s - 1.0 / 3.0) <= half) v(0) = 1.0 / width_;
      if (std::abs(s - 2.0 / 3.0) <= half) v(1) = 1.0 / width_;
      return v;
    }
    case ModeKind::serpenoid:
      return Eigen::Vector2d(std::sin(2.0 * M_PI * s), std::cos(2.0 * M_PI * s));
    case ModeKind::spline:
    case ModeKind::unit_modes:
      return control_points_ * basis_.evaluate(s);
  }
  return {};
}

Eigen::VectorXd ModeSet::basis_values(double s) const {
  if (!has_control_points()) return {};
  return basis_.evaluate(s);
}

ModeSet preset_modes(ModeKind kind, int count) {
  switch (kind) {
    case ModeKind::three_link: return ModeSet::three_link();
    case ModeKind::serpenoid: return ModeSet::serpenoid();
    case ModeKind::unit_modes: return ModeSet::unit_modes(count);
    case ModeKind::spline: break;
  }
  throw std::invalid_argument("spline modes have no preset; supply control points");
}

GaitTrajectory::GaitTrajectory(Eigen::MatrixXd control_points)
    : control_points_(std::move(control_points)),
      basis_(build_gait_basis(static_cast<int>(control_points_.cols()))) {}

Eigen::VectorXd GaitTrajectory::values(double t, int order) const {
  return control_points_ * basis_.evaluate(t, order);
}

CurvatureModel::CurvatureModel()
    : CurvatureModel(ModeSet::serpenoid(), GaitTrajectory(Eigen::MatrixXd::Zero(2, 3))) {}

CurvatureModel::CurvatureModel(ModeSet modes, GaitTrajectory gait, Grid grid)
    : modes_(std::move(modes)), gait_(std::move(gait)), grid_(grid) {
  if (gait_.count() != modes_.count()) {
    throw std::invalid_argument("gait has " + std::to_string(gait_.count()) + " shape variables but design has " +
                                std::to_string(modes_.count()) + " modes");
  }
  if (grid_.segments < 2 || grid_.time_samples < 4) throw std::invalid_argument("grid too coarse");
  const int n = grid_.nodes();
  mode_table_.resize(modes_.count(), n);
  for (int i = 0; i < n; ++i) mode_table_.col(i) = modes_.values(grid_.node(i));
  if (modes_.has_control_points()) {
    basis_table_.resize(n, modes_.basis().size());
    for (int i = 0; i < n; ++i) basis_table_.row(i) = modes_.basis().evaluate(grid_.node(i)).transpose();
  }
}

double CurvatureModel::curvature(double s, double t) const {
  return modes_.values(s).dot(gait_.values(t));
}

double CurvatureModel::curvature_rate(double s, double t) const {
  return modes_.values(s).dot(gait_.values(t, 1));
}

ControlJacobian CurvatureModel::jacobian_controls(double s, double t) const {
  ControlJacobian jac;
  const Eigen::VectorXd alpha = gait_.values(t);
  if (modes_.has_control_points()) {
    jac.modes = alpha * modes_.basis().evaluate(s).transpose();
  }
  jac.gait = modes_.values(s) * gait_.basis().evaluate(t).transpose();
  return jac;
}

ShapeSample CurvatureModel::sample(double t) const {
  ShapeSample out;
  out.curvature = mode_table_.transpose() * gait_.values(t);
  out.curvature_rate = mode_table_.transpose() * gait_.values(t, 1);
  return out;
}

ShapeHistory CurvatureModel::history() const {
  return [model = *this](double t) { return model.sample(t); };
}

CurvatureModel CurvatureModel::with_gait(Eigen::MatrixXd gait_points) const {
  return CurvatureModel(modes_, GaitTrajectory(std::move(gait_points)), grid_);
}

CurvatureModel CurvatureModel::with_modes(Eigen::MatrixXd mode_points) const {
  if (!modes_.has_control_points()) throw std::logic_error("closed-form modes have no control points");
  ModeSet next = ModeSet::spline(std::move(mode_points));
  return CurvatureModel(std::move(next), gait_, grid_);
}

CurvatureModel CurvatureModel::with_grid(Grid grid) const { return CurvatureModel(modes_, gait_, grid); }

CurvatureModel CurvatureModel::mirrored() const { return with_gait(-gait_.control_points()); }

Eigen::MatrixXd curvature_grid(const CurvatureModel& model) {
  const Grid& grid = model.grid();
  Eigen::MatrixXd alpha(model.gait().count(), grid.time_samples);
  for (int k = 0; k < grid.time_samples; ++k) alpha.col(k) = model.gait().values(grid.time(k));
  return model.mode_table().transpose() * alpha;
}

double curvature_bound_scale(const CurvatureModel& model, double bound) {
  const double peak = curvature_grid(model).cwiseAbs().maxCoeff();
  return peak > bound ? bound / peak : 1.0;
}

}  // namespace geoswim
