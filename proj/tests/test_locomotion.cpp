#include <gtest/gtest.h>

#include <cmath>

#include "geoswim/locomotion.hpp"
#include "support.hpp"

using namespace geoswim;

namespace {

double relative_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).norm() / std::max(b.norm(), 1e-300);
}

// Central differences of f over every entry of m.
Eigen::MatrixXd differences(const Eigen::MatrixXd& m, const std::function<double(const Eigen::MatrixXd&)>& f,
                            double h) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      Eigen::MatrixXd up = m, down = m;
      up(i, j) += h;
      down(i, j) -= h;
      out(i, j) = (f(up) - f(down)) / (2.0 * h);
    }
  }
  return out;
}

}  // namespace

TEST(TwoForm, IsAntisymmetric) {
  const CurvatureModel model = fixtures::random_model(51, 1.0, Grid{40, 32});
  const CurvatureTwoForm d = constraint_curvature(model, LowReynolds{}, 0.3);
  for (int c = 0; c < 3; ++c) {
    EXPECT_LT((d.components[c] + d.components[c].transpose()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((d.components[c] - d.exterior[c] - d.bracket[c]).cwiseAbs().maxCoeff(), 1e-12);
  }
  EXPECT_EQ(d.bracket[2].cwiseAbs().maxCoeff(), 0.0);
}

TEST(TwoForm, BracketMatchesLieBracket) {
  const CurvatureModel model = fixtures::random_model(52, 1.0, Grid{30, 32});
  const CurvatureTwoForm d = constraint_curvature(model, LowReynolds{}, 0.6);
  const auto bracket = bracket_term(d.connection);
  for (int j : {0, 7, 22}) {
    for (int l : {3, 19, 30}) {
      const Twist2d expected = se2::lie_bracket(d.connection.col(j), d.connection.col(l));
      for (int c = 0; c < 3; ++c) EXPECT_NEAR(bracket[c](j, l), expected(c), 1e-14);
    }
  }
}

TEST(Pairings, CircleEnclosesItsArea) {
  // alpha = r (cos, sin) encloses pi r^2 for the mode pair
  const CurvatureModel model = fixtures::circular_serpenoid(0.3, 40, Grid{20, 256});
  const Eigen::MatrixXd a = gait_pairings(model);
  EXPECT_LT((a + a.transpose()).cwiseAbs().maxCoeff(), 1e-15);
  // a(s, s') = pi r^2 (sin 2 pi s cos 2 pi s' - cos 2 pi s sin 2 pi s') for this gait
  const double r2 = 0.09;
  for (int j : {2, 5, 13}) {
    for (int l : {1, 9, 17}) {
      const double s = j / 20.0, sp = l / 20.0;
      const double expected = M_PI * r2 * std::sin(2.0 * M_PI * (s - sp));
      EXPECT_NEAR(a(j, l), expected, 2e-4);
    }
  }
}

TEST(Approximation, TracksExactDisplacementAtModerateAmplitude) {
  for (std::uint64_t seed : {61u, 62u, 63u}) {
    const CurvatureModel model = fixtures::random_model(seed, 1.0);
    const double exact = integrate_trajectory(model, LowReynolds{}).x;
    const double approx = displacement_approx(model, LowReynolds{})(0);
    EXPECT_LT(std::abs(approx - exact), 0.1 * std::abs(exact)) << "seed " << seed;
  }
}

TEST(Approximation, ScalesQuadraticallyWithAmplitude) {
  const CurvatureModel model = fixtures::random_model(64, 1.0);
  std::vector<double> logs_e, logs_x;
  for (double e : {0.05, 0.1, 0.2}) {
    const CurvatureModel scaled = model.with_gait(e * model.gait().control_points());
    logs_e.push_back(std::log(e));
    logs_x.push_back(std::log(std::abs(integrate_trajectory(scaled, LowReynolds{}).x)));
    // mean shape of a zero-mean gait is straight for every amplitude, so the estimate is exactly quadratic
    EXPECT_NEAR(displacement_approx(scaled, LowReynolds{})(0) / (e * e), displacement_approx(model, LowReynolds{})(0),
                1e-9);
  }
  const double slope = (logs_x[2] - logs_x[0]) / (logs_e[2] - logs_e[0]);
  EXPECT_GE(slope, 1.95);
  EXPECT_LE(slope, 2.05);
}

TEST(Symmetry, MirrorPreservesForwardMotion) {
  for (int r = 0; r < 2; ++r) {
    const Regime regime = fixtures::regime_by_index(r);
    const CurvatureModel model = fixtures::random_model(65, 1.5);
    const Pose2d g = integrate_trajectory(model, regime);
    const Pose2d m = integrate_trajectory(model.mirrored(), regime);
    EXPECT_NEAR(m.x, g.x, 1e-8);
    EXPECT_NEAR(m.y, -g.y, 1e-8);
    EXPECT_NEAR(m.theta, -g.theta, 1e-8);
    const Twist2d a = displacement_approx(model, regime);
    const Twist2d b = displacement_approx(model.mirrored(), regime);
    EXPECT_NEAR(b(0), a(0), 1e-8 * std::max(1.0, std::abs(a(0))));
    EXPECT_NEAR(b(1), -a(1), 1e-8);
  }
}

TEST(Symmetry, TimeWarpLeavesNetDisplacementUnchanged) {
  // a monotone periodic warp: tau(t) = t - a sin(2 pi t) / (2 pi)
  const CurvatureModel model = fixtures::random_model(66, 1.5);
  const double a = 0.5;
  const ShapeHistory warped = [&](double t) {
    const double tau = t - a * std::sin(2.0 * M_PI * t) / (2.0 * M_PI);
    ShapeSample shape = model.sample(tau - std::floor(tau));
    shape.curvature_rate *= 1.0 - a * std::cos(2.0 * M_PI * t);
    return shape;
  };
  TrajectoryOptions tight;
  tight.ode.relative_tolerance = 1e-11;
  tight.ode.absolute_tolerance = 1e-13;
  const Pose2d g = integrate_trajectory(model, LowReynolds{}, tight);
  const Pose2d w = integrate_trajectory(warped, model.grid(), LowReynolds{}, tight);
  EXPECT_LT((g.coeffs() - w.coeffs()).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Symmetry, GaugeScalingLeavesTheConnectionUnchanged) {
  const CurvatureModel model = fixtures::random_model(67, 2.0);
  const double c = 2.5;
  const CurvatureModel scaled =
      model.with_modes(c * model.modes().control_points()).with_gait(model.gait().control_points() / c);
  for (double t : {0.1, 0.8}) {
    const Eigen::Matrix3Xd a = connection_at(model.sample(t).curvature, model.grid(), LowReynolds{}).values;
    const Eigen::Matrix3Xd b = connection_at(scaled.sample(t).curvature, scaled.grid(), LowReynolds{}).values;
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Gradient, MatchesDifferencesOfTheApproximation) {
  const Regime regime = LowReynolds{};
  const CurvatureModel model = fixtures::random_model(71, 1.0, Grid{}, 2, 6, 6);
  const GradientResult g = displacement_gradient(model, regime, Direction::x, {}, false);
  const double h = 1e-5;
  const Eigen::MatrixXd fd_gait = differences(
      model.gait().control_points(),
      [&](const Eigen::MatrixXd& m) { return displacement_approx(model.with_gait(m), regime)(0); }, h);
  const Eigen::MatrixXd fd_modes = differences(
      model.modes().control_points(),
      [&](const Eigen::MatrixXd& m) { return displacement_approx(model.with_modes(m), regime)(0); }, h);
  EXPECT_LT(relative_error(g.gait, fd_gait), 1e-3);
  EXPECT_LT(relative_error(g.modes, fd_modes), 1e-3);
}

TEST(Gradient, ApproximatesDifferencesOfTheExactDisplacement) {
  const Regime regime = LowReynolds{};
  const CurvatureModel model = fixtures::random_model(72, 1.0, Grid{}, 2, 6, 6);
  const GradientResult g = displacement_gradient(model, regime, Direction::x, {}, false);
  const Eigen::MatrixXd fd_gait = differences(
      model.gait().control_points(),
      [&](const Eigen::MatrixXd& m) { return integrate_trajectory(model.with_gait(m), regime).x; }, 1e-4);
  EXPECT_LT(relative_error(g.gait, fd_gait), 5e-2);
}

TEST(Gradient, GridGradientContractsToControlPoints) {
  const CurvatureModel model = fixtures::random_model(73, 1.0, Grid{40, 64}, 2, 6, 6);
  const GradientResult g = displacement_gradient(model, LowReynolds{}, Direction::y);
  const GradientResult fast = displacement_gradient(model, LowReynolds{}, Direction::y, {}, false);
  EXPECT_EQ(g.grid.rows(), 41);
  EXPECT_EQ(g.grid.cols(), 64);
  // the two paths difference the reference-shape term along different directions
  EXPECT_LT(relative_error(fast.gait, g.gait), 1e-4);
  // d/d alpha_c(i, q) = sum_{j,k} grid(j, k) w_j dt * dkappa(s_j, t_k)/d alpha_c(i, q)
  const Eigen::VectorXd w = model.grid().weights();
  const double dt = 1.0 / model.grid().time_samples;
  for (int i = 0; i < 2; ++i) {
    for (int q : {0, 3}) {
      double sum = 0.0;
      for (int k = 0; k < model.grid().time_samples; ++k) {
        const double t = model.grid().time(k);
        for (int j = 0; j < model.grid().nodes(); ++j) {
          sum += g.grid(j, k) * w(j) * dt * model.jacobian_controls(model.grid().node(j), t).gait(i, q);
        }
      }
      EXPECT_NEAR(sum, g.gait(i, q), 1e-10 * std::max(1.0, std::abs(g.gait(i, q))));
    }
  }
}

TEST(ZeroGait, EverythingVanishes) {
  const CurvatureModel model(ModeSet::serpenoid(), GaitTrajectory(Eigen::MatrixXd::Zero(2, 10)));
  const Pose2d g = integrate_trajectory(model, LowReynolds{});
  EXPECT_EQ(g.coeffs().norm(), 0.0);
  EXPECT_EQ(displacement_approx(model, LowReynolds{}).norm(), 0.0);
  EXPECT_EQ(displacement_gradient(model, LowReynolds{}, Direction::x, {}, false).gait.norm(), 0.0);
}

TEST(TwoForm, SerpenoidCanLocomoteFromTheStraightShape) {
  const Grid grid{40, 32};
  const CurvatureTwoForm d = constraint_curvature(Eigen::VectorXd::Zero(grid.nodes()), grid, LowReynolds{});
  for (int c = 0; c < 3; ++c) EXPECT_EQ(d.components[c].diagonal().cwiseAbs().maxCoeff(), 0.0);
  EXPECT_GT(d.components[0].cwiseAbs().maxCoeff(), 0.0);
  // with only surge in the connection the bracket has nothing to act on
  Eigen::Matrix3Xd surge = Eigen::Matrix3Xd::Zero(3, grid.nodes());
  surge.row(0).setOnes();
  for (const auto& part : bracket_term(surge)) EXPECT_EQ(part.cwiseAbs().maxCoeff(), 0.0);
}
