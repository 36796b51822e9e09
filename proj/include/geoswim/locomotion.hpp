#pragma once

#include <array>

#include <Eigen/Dense>

#include "geoswim/backbone.hpp"
#include "geoswim/hydrodynamics.hpp"
#include "geoswim/ode.hpp"
#include "geoswim/shape.hpp"

namespace geoswim {

struct TrajectoryOptions {
  OdeOptions ode{};
  BaseFrame base = BaseFrame::geometric_center;
};

/// Net displacement over one period: integrates dg/dt = g * hat(xi_base(t))
/// from the identity with adaptive Dormand-Prince steps.
Pose2d integrate_trajectory(const ShapeHistory& history, const Grid& grid, const Regime& regime,
                            const TrajectoryOptions& options = {}, OdeStats* stats = nullptr);
Pose2d integrate_trajectory(const CurvatureModel& model, const Regime& regime, const TrajectoryOptions& options = {},
                            OdeStats* stats = nullptr);

/// Constraint curvature D(A)(s, s') = dA + [A_s, A_s'] per direction, as a
/// density over (s, s'). components[c](j, l) is direction c at (s_j, s_l).
struct CurvatureTwoForm {
  std::array<Eigen::MatrixXd, 3> components;
  std::array<Eigen::MatrixXd, 3> exterior;  // dA part
  std::array<Eigen::MatrixXd, 3> bracket;   // [A_s, A_s'] part
  Eigen::Matrix3Xd connection;              // A at the evaluation shape

  Eigen::Vector3d at(int j, int l) const {
    return {components[0](j, l), components[1](j, l), components[2](j, l)};
  }
};

inline constexpr double kCurvaturePerturbation = 1e-4;

/// Two-form at a nodal shape. dA is a central difference of the full
/// connection pipeline under unit-mass one-node hat perturbations of size h.
CurvatureTwoForm constraint_curvature(const Eigen::VectorXd& curvature, const Grid& grid, const Regime& regime,
                                      double h = kCurvaturePerturbation,
                                      BaseFrame base = BaseFrame::geometric_center);
CurvatureTwoForm constraint_curvature(const CurvatureModel& model, const Regime& regime, double t,
                                      double h = kCurvaturePerturbation);

/// [A_s, A_s'] for every node pair.
std::array<Eigen::MatrixXd, 3> bracket_term(const Eigen::Matrix3Xd& connection);

/// Enclosed pairings a(s_j, s_l) = 1/2 oint (kappa_j dkappa_l - kappa_l dkappa_j),
/// as the periodic rectangle rule over the model's time samples.
Eigen::MatrixXd gait_pairings(const CurvatureModel& model);

/// Time-mean nodal shape of the gait, the point where the surface integral's
/// two-form is evaluated.
Eigen::VectorXd mean_shape(const CurvatureModel& model);

struct ApproximationOptions {
  double perturbation = kCurvaturePerturbation;
  double reference_step = 1e-4;  // central-difference step for derivatives of D in the reference shape
  BaseFrame base = BaseFrame::geometric_center;
};

/// Surface-integral approximation of log(net displacement):
/// sum over s < s' of D(A)(s, s') * a(s, s') ds ds', with D evaluated at the gait's mean shape.
Twist2d displacement_approx(const CurvatureModel& model, const Regime& regime, const ApproximationOptions& options = {});

enum class Direction { x = 0, y = 1, theta = 2 };

struct GradientResult {
  Direction component{Direction::x};
  Twist2d displacement;          // approximation value
  Eigen::MatrixXd grid;          // d displacement / d kappa(s_j, t_k) density, nodes x time_samples
  Eigen::MatrixXd modes;         // d / d kappa_c (count x P), empty for frozen designs
  Eigen::MatrixXd gait;          // d / d alpha_c (count x Q)
};

/// Gradient of the approximated displacement. The grid gradient is the Green
/// boundary term int dkappa(s,t) kappa_t(s',t) D(s,s') plus the reference-shape
/// term; control-point gradients contract it with the bilinear Jacobian.
/// `with_grid` = false skips the per-node reference-shape sweep and only
/// fills the control-point gradients.
GradientResult displacement_gradient(const CurvatureModel& model, const Regime& regime, Direction component,
                                     const ApproximationOptions& options = {}, bool with_grid = true);

/// All three components at once, sharing the two-form evaluations.
std::array<GradientResult, 3> displacement_gradients(const CurvatureModel& model, const Regime& regime,
                                                     const ApproximationOptions& options = {}, bool with_grid = true);

}  // namespace geoswim
