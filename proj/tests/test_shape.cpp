#include <gtest/gtest.h>

#include "geoswim/shape.hpp"
#include "support.hpp"

using namespace geoswim;

TEST(Grid, TrapezoidWeights) {
  const Grid grid;
  EXPECT_EQ(grid.nodes(), 101);
  const Eigen::VectorXd w = grid.weights();
  EXPECT_NEAR(w.sum(), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(w(0), 0.005);
  EXPECT_DOUBLE_EQ(w(50), 0.01);
  EXPECT_DOUBLE_EQ(grid.time(64), 0.5);
}

TEST(Modes, SerpenoidValues) {
  const ModeSet modes = ModeSet::serpenoid();
  EXPECT_EQ(modes.count(), 2);
  EXPECT_FALSE(modes.has_control_points());
  const Eigen::VectorXd v = modes.values(0.125);
  EXPECT_NEAR(v(0), std::sin(M_PI / 4.0), 1e-15);
  EXPECT_NEAR(v(1), std::cos(M_PI / 4.0), 1e-15);
}

TEST(Modes, ThreeLinkJointsCarryUnitAngle) {
  const ModeSet modes = ModeSet::three_link();
  CurvatureModel model(modes, GaitTrajectory(Eigen::MatrixXd::Ones(2, 4)));
  const Eigen::VectorXd w = model.grid().weights();
  // per-segment midpoint rule, the same rule the backbone uses
  for (int i = 0; i < 2; ++i) {
    const Eigen::VectorXd k = model.mode_table().row(i).transpose();
    double angle = 0.0;
    for (int j = 0; j + 1 < k.size(); ++j) angle += model.grid().spacing() * 0.5 * (k(j) + k(j + 1));
    EXPECT_NEAR(angle, 1.0, 1e-12);
  }
  EXPECT_DOUBLE_EQ(modes.values(1.0 / 3.0)(0), 20.0);
  EXPECT_DOUBLE_EQ(modes.values(0.5)(0), 0.0);
  EXPECT_THROW(ModeSet::three_link(0.5), std::invalid_argument);
}

TEST(Modes, UnitModesAreTheCardinalBasis) {
  const ModeSet modes = ModeSet::unit_modes(10);
  EXPECT_EQ(modes.kind(), ModeKind::unit_modes);
  for (double s : {0.0, 0.2, 0.73, 1.0}) EXPECT_LT((modes.values(s) - modes.basis_values(s)).norm(), 1e-15);
  EXPECT_THROW(preset_modes(ModeKind::spline), std::invalid_argument);
  EXPECT_EQ(mode_kind_from_string(to_string(ModeKind::three_link)), ModeKind::three_link);
}

TEST(CurvatureModel, IsTheSumOfModesTimesShapeVariables) {
  const CurvatureModel model = fixtures::random_model(3);
  for (double t : {0.0, 0.4, 0.9}) {
    const ShapeSample sample = model.sample(t);
    for (int i : {0, 17, 100}) {
      const double s = model.grid().node(i);
      EXPECT_NEAR(sample.curvature(i), model.modes().values(s).dot(model.gait().values(t)), 1e-14);
      EXPECT_NEAR(sample.curvature(i), model.curvature(s, t), 1e-14);
      EXPECT_NEAR(sample.curvature_rate(i), model.curvature_rate(s, t), 1e-13);
    }
  }
}

TEST(CurvatureModel, RateIsTimeDerivative) {
  const CurvatureModel model = fixtures::random_model(4);
  const double h = 1e-6;
  for (double t : {0.1, 0.55}) {
    const double fd = (model.curvature(0.3, t + h) - model.curvature(0.3, t - h)) / (2.0 * h);
    EXPECT_NEAR(model.curvature_rate(0.3, t), fd, 1e-6);
  }
}

TEST(CurvatureModel, ControlJacobianMatchesDifferences) {
  const CurvatureModel model = fixtures::random_model(5);
  const double s = 0.37, t = 0.61, h = 1e-6;
  const ControlJacobian jac = model.jacobian_controls(s, t);
  const Eigen::MatrixXd& modes = model.modes().control_points();
  const Eigen::MatrixXd& gait = model.gait().control_points();
  for (int i = 0; i < modes.rows(); ++i) {
    for (int j = 0; j < modes.cols(); j += 3) {
      Eigen::MatrixXd up = modes, down = modes;
      up(i, j) += h;
      down(i, j) -= h;
      const double fd = (model.with_modes(up).curvature(s, t) - model.with_modes(down).curvature(s, t)) / (2.0 * h);
      EXPECT_NEAR(jac.modes(i, j), fd, 1e-8);
    }
    for (int q = 0; q < gait.cols(); q += 3) {
      Eigen::MatrixXd up = gait, down = gait;
      up(i, q) += h;
      down(i, q) -= h;
      const double fd = (model.with_gait(up).curvature(s, t) - model.with_gait(down).curvature(s, t)) / (2.0 * h);
      EXPECT_NEAR(jac.gait(i, q), fd, 1e-8);
    }
  }
}

TEST(CurvatureModel, GaugeScalingLeavesCurvatureUnchanged) {
  const CurvatureModel model = fixtures::random_model(6);
  const double c = 3.7;
  const CurvatureModel scaled =
      model.with_modes(c * model.modes().control_points()).with_gait(model.gait().control_points() / c);
  EXPECT_LT((curvature_grid(model) - curvature_grid(scaled)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(CurvatureModel, MirrorNegatesCurvature) {
  const CurvatureModel model = fixtures::random_model(7);
  EXPECT_LT((curvature_grid(model) + curvature_grid(model.mirrored())).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(CurvatureModel, BoundScale) {
  const CurvatureModel model = fixtures::random_model(8, 4.0);
  EXPECT_NEAR(curvature_bound_scale(model, 2.0), 0.5, 1e-12);
  EXPECT_DOUBLE_EQ(curvature_bound_scale(model, 5.0), 1.0);
}

TEST(CurvatureModel, RejectsMismatchedGait) {
  EXPECT_THROW(CurvatureModel(ModeSet::serpenoid(), GaitTrajectory(Eigen::MatrixXd::Zero(3, 5))),
               std::invalid_argument);
  const CurvatureModel closed(ModeSet::serpenoid(), GaitTrajectory(Eigen::MatrixXd::Zero(2, 5)));
  EXPECT_THROW(closed.with_modes(Eigen::MatrixXd::Zero(2, 5)), std::logic_error);
}
