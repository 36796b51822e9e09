#include "geoswim/locomotion.hpp"

#include <cmath>

namespace geoswim {

namespace {

// Shape-variable samples over the period: values (count x N_t) or rates.
Eigen::MatrixXd gait_samples(const CurvatureModel& model, int order) {
  const Grid& grid = model.grid();
  Eigen::MatrixXd alpha(model.gait().count(), grid.time_samples);
  for (int k = 0; k < grid.time_samples; ++k) alpha.col(k) = model.gait().values(grid.time(k), order);
  return alpha;
}

Eigen::MatrixXd gait_basis_samples(const CurvatureModel& model) {
  const Grid& grid = model.grid();
  Eigen::MatrixXd psi(grid.time_samples, model.gait().points());
  for (int k = 0; k < grid.time_samples; ++k) psi.row(k) = model.gait().basis().evaluate(grid.time(k)).transpose();
  return psi;
}

// 1/2 sum_{j,l} w_j w_l D(j,l) a(j,l) per direction.
Twist2d pair_integral(const CurvatureTwoForm& form, const Eigen::MatrixXd& pairings, const Eigen::VectorXd& w) {
  Twist2d out;
  for (int c = 0; c < 3; ++c) out(c) = 0.5 * w.dot(form.components[c].cwiseProduct(pairings) * w);
  return out;
}

struct ReferenceShape {
  const Grid& grid;
  const Regime& regime;
  const ApproximationOptions& options;
  const Eigen::MatrixXd& pairings;
  Eigen::VectorXd weights;

  Twist2d value(const Eigen::VectorXd& shape) const {
    return pair_integral(constraint_curvature(shape, grid, regime, options.perturbation, options.base), pairings,
                         weights);
  }

  // Directional derivative of the pair integral with D moved along `direction`.
  Twist2d directional(const Eigen::VectorXd& shape, const Eigen::VectorXd& direction) const {
    const double eps = options.reference_step;
    return (value(shape + eps * direction) - value(shape - eps * direction)) / (2.0 * eps);
  }
};

}  // namespace

Pose2d integrate_trajectory(const ShapeHistory& history, const Grid& grid, const Regime& regime,
                            const TrajectoryOptions& options, OdeStats* stats) {
  const Eigen::VectorXd weights = grid.weights();
  auto rhs = [&](double t, const Eigen::Vector3d& y) -> Eigen::Vector3d {
    const ShapeSample shape = history(t);
    const ConnectionField connection = connection_at(shape.curvature, grid, regime, options.base);
    const Twist2d xi = body_velocity(connection, shape.curvature_rate, weights);
    return se2::pose_rate(Pose2d::from_coeffs(y), xi);
  };
  const Eigen::Vector3d end = integrate_dopri5<3>(rhs, Eigen::Vector3d::Zero(), 0.0, 1.0, options.ode, stats);
  return Pose2d::from_coeffs(end);
}

Pose2d integrate_trajectory(const CurvatureModel& model, const Regime& regime, const TrajectoryOptions& options,
                            OdeStats* stats) {
  return integrate_trajectory(model.history(), model.grid(), regime, options, stats);
}

std::array<Eigen::MatrixXd, 3> bracket_term(const Eigen::Matrix3Xd& connection) {
  const int n = static_cast<int>(connection.cols());
  std::array<Eigen::MatrixXd, 3> out;
  for (auto& m : out) m = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      const Eigen::Vector3d b = se2::lie_bracket(connection.col(j), connection.col(l));
      for (int c = 0; c < 3; ++c) out[c](j, l) = b(c);
    }
  }
  return out;
}

CurvatureTwoForm constraint_curvature(const Eigen::VectorXd& curvature, const Grid& grid, const Regime& regime,
                                      double h, BaseFrame base) {
  const int n = grid.nodes();
  const Eigen::VectorXd w = grid.weights();
  CurvatureTwoForm form;
  form.connection = connection_at(curvature, grid, regime, base).values;

  // variation[l].col(i) = dA(s_i) / dkappa(s_l) as a functional derivative
  std::vector<Eigen::Matrix3Xd> variation(n);
  Eigen::VectorXd shifted = curvature;
  for (int l = 0; l < n; ++l) {
    const double bump = h / w(l);
    shifted(l) = curvature(l) + bump;
    const Eigen::Matrix3Xd plus = connection_at(shifted, grid, regime, base).values;
    shifted(l) = curvature(l) - bump;
    const Eigen::Matrix3Xd minus = connection_at(shifted, grid, regime, base).values;
    shifted(l) = curvature(l);
    variation[l] = (plus - minus) / (2.0 * h);
  }

  form.bracket = bracket_term(form.connection);
  for (int c = 0; c < 3; ++c) {
    form.exterior[c].resize(n, n);
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) form.exterior[c](j, l) = variation[j](c, l) - variation[l](c, j);
    }
    form.components[c] = form.exterior[c] + form.bracket[c];
  }
  return form;
}

CurvatureTwoForm constraint_curvature(const CurvatureModel& model, const Regime& regime, double t, double h) {
  return constraint_curvature(model.sample(t).curvature, model.grid(), regime, h);
}

Eigen::MatrixXd gait_pairings(const CurvatureModel& model) {
  const Eigen::MatrixXd values = model.mode_table().transpose() * gait_samples(model, 0);
  const Eigen::MatrixXd rates = model.mode_table().transpose() * gait_samples(model, 1);
  const Eigen::MatrixXd cross = values * rates.transpose();
  return 0.5 * model.grid().time_step() * (cross - cross.transpose());
}

Eigen::VectorXd mean_shape(const CurvatureModel& model) {
  return model.mode_table().transpose() * gait_samples(model, 0).rowwise().mean();
}

Twist2d displacement_approx(const CurvatureModel& model, const Regime& regime, const ApproximationOptions& options) {
  const CurvatureTwoForm form =
      constraint_curvature(mean_shape(model), model.grid(), regime, options.perturbation, options.base);
  return pair_integral(form, gait_pairings(model), model.grid().weights());
}

std::array<GradientResult, 3> displacement_gradients(const CurvatureModel& model, const Regime& regime,
                                                     const ApproximationOptions& options, bool with_grid) {
  const Grid& grid = model.grid();
  const int n = grid.nodes();
  const double dt = grid.time_step();
  const Eigen::VectorXd w = grid.weights();
  const Eigen::MatrixXd pairings = gait_pairings(model);
  const Eigen::VectorXd center = mean_shape(model);
  const CurvatureTwoForm form = constraint_curvature(center, grid, regime, options.perturbation, options.base);
  const ReferenceShape reference{grid, regime, options, pairings, w};

  const Eigen::MatrixXd alpha = gait_samples(model, 0);
  const Eigen::MatrixXd rates = model.mode_table().transpose() * gait_samples(model, 1);
  const Eigen::MatrixXd psi = gait_basis_samples(model);
  const Eigen::VectorXd alpha_mean = alpha.rowwise().mean();
  const Eigen::VectorXd psi_mean = psi.colwise().mean().transpose();
  const bool free_modes = model.modes().has_control_points();

  // d/dc of the pair integral, either per node or along the directions the
  // control points can move the mean shape.
  Eigen::Matrix3Xd node_slope;
  if (with_grid) {
    node_slope.resize(3, n);
    for (int j = 0; j < n; ++j) node_slope.col(j) = reference.directional(center, Eigen::VectorXd::Unit(n, j));
  }
  const int modes = model.modes().count();
  Eigen::Matrix3Xd mode_slope(3, modes);
  for (int i = 0; i < modes; ++i) {
    const Eigen::VectorXd direction = model.mode_table().row(i).transpose();
    mode_slope.col(i) = with_grid ? Eigen::Vector3d(node_slope * direction) : reference.directional(center, direction);
  }
  Eigen::Matrix3Xd basis_slope;
  if (free_modes) {
    const int points = static_cast<int>(model.basis_table().cols());
    basis_slope.resize(3, points);
    for (int p = 0; p < points; ++p) {
      const Eigen::VectorXd direction = model.basis_table().col(p);
      basis_slope.col(p) = with_grid ? Eigen::Vector3d(node_slope * direction) : reference.directional(center, direction);
    }
  }

  const Twist2d value = pair_integral(form, pairings, w);
  const Eigen::MatrixXd pair_weights = w * w.transpose();
  std::array<GradientResult, 3> out;
  for (int c = 0; c < 3; ++c) {
    GradientResult& r = out[c];
    r.component = static_cast<Direction>(c);
    r.displacement = value;
    // d approx / d kappa_jk from the boundary term, before the dt factor
    const Eigen::MatrixXd boundary = pair_weights.cwiseProduct(form.components[c]) * rates;
    if (with_grid) {
      r.grid = boundary;
      for (int j = 0; j < n; ++j) r.grid.row(j) = (r.grid.row(j).array() + node_slope(c, j)) / w(j);
    }
    r.gait = dt * model.mode_table() * boundary * psi + mode_slope.row(c).transpose() * psi_mean.transpose();
    if (free_modes) {
      r.modes = dt * alpha * boundary.transpose() * model.basis_table() + alpha_mean * basis_slope.row(c);
    }
  }
  return out;
}

GradientResult displacement_gradient(const CurvatureModel& model, const Regime& regime, Direction component,
                                     const ApproximationOptions& options, bool with_grid) {
  return displacement_gradients(model, regime, options, with_grid)[static_cast<int>(component)];
}

}  // namespace geoswim
