#include <gtest/gtest.h>

#include <random>

#include "geoswim/power.hpp"
#include "support.hpp"

using namespace geoswim;

namespace {

// The same gait run twice per period.
CurvatureModel doubled(const CurvatureModel& model, int time_factor) {
  const Eigen::MatrixXd& g = model.gait().control_points();
  Eigen::MatrixXd twice(g.rows(), 2 * g.cols());
  twice << g, g;
  const Grid grid = model.grid();
  return model.with_gait(twice).with_grid(Grid{grid.segments, time_factor * grid.time_samples});
}

Eigen::Matrix3Xd uniform_velocity(int n, const Twist2d& v) { return v.replicate(1, n); }

}  // namespace

TEST(Power, ZeroGaitCostsNothing) {
  const CurvatureModel still(ModeSet::serpenoid(), GaitTrajectory(Eigen::MatrixXd::Zero(2, 6)));
  for (int r = 0; r < 2; ++r) {
    const EfficiencyReport report = efficiency(still, fixtures::regime_by_index(r));
    EXPECT_EQ(report.cost.cycle_cost, 0.0);
    EXPECT_EQ(report.efficiency, 0.0);
  }
}

TEST(Power, StraightBodyDrag) {
  const Grid grid;
  const Eigen::VectorXd w = grid.weights();
  const Eigen::Matrix3d mu = local_metric(LowReynolds{});
  const double v = 0.7;
  EXPECT_NEAR(drag_power(uniform_velocity(grid.nodes(), Twist2d(v, 0.0, 0.0)), mu, w), v * v, 1e-14);
  EXPECT_NEAR(drag_power(uniform_velocity(grid.nodes(), Twist2d(0.0, v, 0.0)), mu, w), 2.0 * v * v, 1e-14);
}

TEST(Power, SolvedVelocityMinimizesDissipation) {
  const CurvatureModel model = fixtures::random_model(81, 2.0);
  const Regime regime = LowReynolds{};
  const Eigen::Matrix3d mu = local_metric(regime);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal(0.0, 1e-3);
  for (double t : {0.15, 0.5, 0.9}) {
    const ShapeSample shape = model.sample(t);
    const BackboneState state = backbone_state(shape.curvature, model.grid());
    const Twist2d xi = body_velocity(shape, model.grid(), regime);
    const double best = drag_power(frame_body_velocities(state, shape.curvature_rate, xi), mu, state.weights);
    EXPECT_NEAR(best, dissipated_power(model, regime, t), 1e-14);
    for (int trial = 0; trial < 10; ++trial) {
      const Twist2d delta(normal(rng), normal(rng), normal(rng));
      const double worse =
          drag_power(frame_body_velocities(state, shape.curvature_rate, xi + delta), mu, state.weights);
      EXPECT_GT(worse - best, 0.0);
    }
  }
}

TEST(Power, LowReynoldsCostIsQuadraticInRate) {
  const CurvatureModel model = fixtures::random_model(82, 1.5);
  const CurvatureModel fast = doubled(model, 2);
  for (double t : {0.1, 0.3}) {
    EXPECT_NEAR(dissipated_power(fast, LowReynolds{}, 0.5 * t), 4.0 * dissipated_power(model, LowReynolds{}, t),
                1e-10 * dissipated_power(model, LowReynolds{}, t));
  }
  const double ratio = cycle_cost(fast, LowReynolds{}).cycle_cost / cycle_cost(model, LowReynolds{}).cycle_cost;
  EXPECT_NEAR(ratio, 4.0, 1e-9);
}

TEST(Power, HighReynoldsCostScalesWithTheFourthPowerOfRate) {
  const CurvatureModel model = fixtures::random_model(83, 1.5);
  // twice the speed on twice the samples: accelerations double twice, the cycle halves
  const double total = covariant_acceleration_cost(doubled(model, 2), HighReynolds{}).cycle_cost;
  const double single = covariant_acceleration_cost(model, HighReynolds{}).cycle_cost;
  EXPECT_NEAR(total / single, 16.0, 1e-6);
  EXPECT_NEAR(0.5 * total / single, 8.0, 1e-6);
}

TEST(Power, HighReynoldsRigidMotion) {
  const Grid grid;
  const Eigen::Matrix3d mu = local_metric(HighReynolds{});
  const int n = grid.nodes();
  std::vector<Eigen::Matrix3Xd> straight(grid.time_samples, uniform_velocity(n, Twist2d(0.3, -0.1, 0.0)));
  EXPECT_NEAR(acceleration_cost(straight, mu, grid.weights()).cycle_cost, 0.0, 1e-20);
  // constant body velocity with rotation: each section turns on a circle
  std::vector<Eigen::Matrix3Xd> circling(grid.time_samples, uniform_velocity(n, Twist2d(0.3, 0.0, 0.5)));
  const CostBreakdown cost = acceleration_cost(circling, mu, grid.weights());
  EXPECT_NEAR(cost.cycle_cost, mu(1, 1) * 0.15 * 0.15, 1e-15);
  EXPECT_NEAR(cost.rotational_cost, 0.0, 1e-30);
}

TEST(Power, RotationalInertiaIsASmallReportedPart) {
  const CurvatureModel model = fixtures::random_model(84, 2.0);
  const CostBreakdown cost = cycle_cost(model, HighReynolds{});
  EXPECT_GT(cost.rotational_cost, 0.0);
  EXPECT_LT(cost.rotational_cost, 1e-3 * cost.cycle_cost);
  EXPECT_EQ(cost.regime, "high");
  EXPECT_EQ(cost.instantaneous.size(), model.grid().time_samples);
}

TEST(Power, MirrorAndGaugeInvariance) {
  const CurvatureModel model = fixtures::random_model(85, 1.5);
  const CurvatureModel scaled =
      model.with_modes(1.7 * model.modes().control_points()).with_gait(model.gait().control_points() / 1.7);
  // the fields agree to rounding; the integrator has to be converged past the tolerance
  EfficiencyOptions tight;
  tight.trajectory.ode.relative_tolerance = 1e-12;
  tight.trajectory.ode.absolute_tolerance = 1e-14;
  for (int r = 0; r < 2; ++r) {
    const Regime regime = fixtures::regime_by_index(r);
    const EfficiencyReport base = efficiency(model, regime, tight);
    const double mirrored = cycle_cost(model.mirrored(), regime).cycle_cost;
    EXPECT_NEAR(mirrored, base.cost.cycle_cost, 1e-8 * base.cost.cycle_cost);
    EXPECT_NEAR(efficiency(scaled, regime, tight).efficiency, base.efficiency, 1e-9 * base.efficiency);
  }
}

TEST(Power, CostIsSmoothInControlPoints) {
  const CurvatureModel model = fixtures::random_model(86, 1.0);
  const Eigen::MatrixXd g = model.gait().control_points();
  std::vector<double> c;
  for (int k = -2; k <= 2; ++k) {
    Eigen::MatrixXd m = g;
    m(0, 2) += k * 1e-4;
    c.push_back(cycle_cost(model.with_gait(m), LowReynolds{}).cycle_cost);
  }
  // second differences stay at the scale of a smooth function
  const double d2a = c[0] - 2 * c[1] + c[2], d2b = c[2] - 2 * c[3] + c[4];
  EXPECT_NEAR(d2a, d2b, 1e-3 * std::abs(d2a) + 1e-15);
}

TEST(Power, EfficiencyIsForwardProgressOverCost) {
  const CurvatureModel model = fixtures::random_model(87, 1.0);
  EfficiencyOptions options;
  options.with_approximation = true;
  const EfficiencyReport report = efficiency(model, LowReynolds{}, options);
  EXPECT_DOUBLE_EQ(report.efficiency, std::abs(report.displacement.x) / report.cost.cycle_cost);
  ASSERT_TRUE(report.approximation.has_value());
  options.component = Direction::theta;
  EXPECT_DOUBLE_EQ(efficiency(model, LowReynolds{}, options).efficiency,
                   std::abs(report.displacement.theta) / report.cost.cycle_cost);
  EXPECT_THROW(dissipated_power(model, HighReynolds{}, 0.0), std::invalid_argument);
  EXPECT_THROW(covariant_acceleration_cost(model, LowReynolds{}), std::invalid_argument);
}

TEST(Power, NonuniformPacingCostsMore) {
  // low-Re power is quadratic in the rate, so the warped cycle dissipates int tau'(t)^2 P(tau(t)) dt
  const CurvatureModel model = fixtures::random_model(87, 1.5);
  const int n = model.grid().time_samples;
  const double uniform = cycle_cost(model, LowReynolds{}).cycle_cost;
  for (double a : {0.0, 0.2, 0.5}) {
    double warped = 0.0;
    for (int k = 0; k < n; ++k) {
      const double t = model.grid().time(k);
      const double tau = t - a * std::sin(2.0 * M_PI * t) / (2.0 * M_PI);
      const double rate = 1.0 - a * std::cos(2.0 * M_PI * t);
      warped += rate * rate * dissipated_power(model, LowReynolds{}, tau) / n;
    }
    if (a == 0.0) {
      EXPECT_NEAR(warped, uniform, 1e-12 * uniform);
    } else {
      EXPECT_GT(warped, uniform) << "a " << a;
    }
  }
}
