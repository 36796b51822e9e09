#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "geoswim/hydrodynamics.hpp"
#include "geoswim/locomotion.hpp"
#include "geoswim/shape.hpp"

namespace geoswim {

struct CostBreakdown {
  std::string regime;
  Eigen::VectorXd instantaneous;  // P(t_k) over the time samples
  double cycle_cost = 0.0;        // periodic rectangle rule of P over one period
  double rotational_cost = 0.0;   // high Re: part of cycle_cost from the section rotational inertia
};

/// Body velocities of all node frames at the model's time samples, solved
/// with the regime's connection.
std::vector<Eigen::Matrix3Xd> section_velocities(const CurvatureModel& model, const Regime& regime,
                                                 BaseFrame base = BaseFrame::geometric_center);

/// Low Re: int xi^T mu xi ds at the solved base velocity. Throws
/// std::invalid_argument for a high-Re regime.
double dissipated_power(const CurvatureModel& model, const Regime& regime, double t,
                        BaseFrame base = BaseFrame::geometric_center);

/// Quadratic drag form for given frame velocities (used by the power and by
/// perturbation checks of its minimality).
double drag_power(const Eigen::Matrix3Xd& velocities, const Eigen::Matrix3d& metric, const Eigen::VectorXd& weights);

/// Mass-weighted squared inertial acceleration of the section frames,
/// int a^T M a ds, a = (dv/dt + omega x v, domega/dt) in the section frame,
/// with periodic 4th-order central differences in time.
CostBreakdown acceleration_cost(const std::vector<Eigen::Matrix3Xd>& velocities, const Eigen::Matrix3d& metric,
                                const Eigen::VectorXd& weights);

/// High Re cost at a single time, using the same stencil spacing 1 / time_samples.
double covariant_acceleration_power(const CurvatureModel& model, const Regime& regime, double t,
                                    BaseFrame base = BaseFrame::geometric_center);
/// High Re cycle cost. Throws std::invalid_argument for a low-Re regime.
CostBreakdown covariant_acceleration_cost(const CurvatureModel& model, const Regime& regime,
                                          BaseFrame base = BaseFrame::geometric_center);

/// Regime-appropriate cycle cost.
CostBreakdown cycle_cost(const CurvatureModel& model, const Regime& regime,
                         BaseFrame base = BaseFrame::geometric_center);

struct EfficiencyOptions {
  Direction component = Direction::x;
  bool with_approximation = false;
  TrajectoryOptions trajectory{};
};

struct EfficiencyReport {
  Direction component{Direction::x};
  Pose2d displacement;                    // exact net displacement of the base frame
  std::optional<Twist2d> approximation;   // surface-integral estimate of log(displacement)
  CostBreakdown cost;
  double efficiency = 0.0;                // |displacement component| / cycle cost
};

/// Efficiency = |net displacement along component| / cycle cost; 0 / 0 gives 0.
EfficiencyReport efficiency(const CurvatureModel& model, const Regime& regime, const EfficiencyOptions& options = {});

double displacement_component(const Pose2d& g, Direction component);

}  // namespace geoswim
