#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "geoswim/hydrodynamics.hpp"
#include "geoswim/locomotion.hpp"
#include "geoswim/power.hpp"
#include "geoswim/shape.hpp"

namespace geoswim {

enum class VariableSet { gait_only, co_design, infinite };

std::string to_string(VariableSet set);
VariableSet variable_set_from_string(const std::string& name);

enum class SwimmerFamily { three_link, serpenoid, two_mode, three_mode, infinite };

std::string to_string(SwimmerFamily family);
SwimmerFamily swimmer_family_from_string(const std::string& name);
const std::vector<SwimmerFamily>& all_swimmer_families();

struct OptimizerSettings {
  double rel_tol = 1e-6;        // relative efficiency improvement counted as stalled
  int patience = 5;             // consecutive stalled iterations before stopping
  int max_iters = 500;
  double kappa_max = 8.0;       // rad per body length
  double rms_curvature = 0.5;   // gait amplitude held fixed by the projection; <= 0 leaves it free
  double armijo = 1e-4;
  double shrink = 0.5;
  int max_backtracks = 30;
  double initial_step = 0.1;    // first trial step length, relative to |x|
  double cost_step = 1e-5;      // central-difference step for the cost gradient
  int memory = 0;               // limited-memory curvature pairs; 0 is plain gradient ascent
  int threads = 1;              // workers for the cost-gradient differences
  Direction component = Direction::x;
  TrajectoryOptions trajectory{};
};

struct OptimizationProblem {
  Regime regime{LowReynolds{}};
  VariableSet variables{VariableSet::gait_only};
  CurvatureModel initial;
  OptimizerSettings settings{};
};

struct IterationRecord {
  int iteration = 0;
  double efficiency = 0.0;
  double displacement = 0.0;
  double cost = 0.0;
  double step = 0.0;
  double gradient_norm = 0.0;
};

struct OptimizationTrace {
  std::vector<IterationRecord> iterations;  // iteration 0 is the (feasible) starting point
  CurvatureModel final_model;
  EfficiencyReport final_report;
  std::string stop_reason;
};

/// Objective value plus gradient over a flat parameter vector.
struct ObjectiveSample {
  double value = 0.0;
  double displacement = 0.0;
  double cost = 0.0;
  Eigen::VectorXd gradient;
};

/// Packs the free control points: [row-major kappa_c (co_design only), row-major alpha_c].
Eigen::VectorXd pack_parameters(const CurvatureModel& model, VariableSet variables);
CurvatureModel unpack_parameters(const CurvatureModel& like, VariableSet variables, const Eigen::VectorXd& x);

/// Removes the mode-mixing gauge: rows of kappa_c become orthogonal with unit
/// RMS, alpha_c is transformed so that kappa(s, t) is unchanged.
CurvatureModel orthonormalize_modes(const CurvatureModel& model);

/// Scales alpha_c so that max |kappa| on the grid is within kappa_max.
CurvatureModel enforce_curvature_bound(const CurvatureModel& model, double kappa_max);

/// RMS of kappa over the (s, t) grid, trapezoid weights in s.
double rms_curvature(const CurvatureModel& model);

/// Scales alpha_c to the given RMS curvature (no-op for a zero gait).
CurvatureModel normalize_amplitude(const CurvatureModel& model, double rms);

/// Removes the components of g along the kappa_c block and the alpha_c block
/// of x, the two scalings that leave efficiency unchanged to leading order.
Eigen::VectorXd tangent_gradient(const Eigen::VectorXd& x, const Eigen::VectorXd& g, int mode_block);

/// Efficiency and its gradient: displacement gradient from the surface-integral
/// approximation, cost gradient by central differences over control points.
ObjectiveSample efficiency_objective(const CurvatureModel& model, const Regime& regime, VariableSet variables,
                                     const OptimizerSettings& settings, bool with_gradient = true);

/// Projected gradient ascent on efficiency with Armijo backtracking.
OptimizationTrace optimize(const OptimizationProblem& problem);

/// Generic projected gradient ascent used by optimize(). `project` maps a raw
/// iterate back to the feasible set; the objective sees projected points only.
struct AscentResult {
  Eigen::VectorXd x;
  ObjectiveSample last;
  std::vector<IterationRecord> iterations;
  std::string stop_reason;
};
AscentResult gradient_ascent(const std::function<ObjectiveSample(const Eigen::VectorXd&, bool)>& objective,
                             const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& project,
                             Eigen::VectorXd x0, const OptimizerSettings& settings);

/// Smooth random gait: two-harmonic Fourier series per shape variable with
/// coefficients uniform in [-amplitude, amplitude], sampled at the knots.
Eigen::MatrixXd random_gait(int count, int points, std::uint64_t seed, double amplitude = 0.5);

struct FamilySetup {
  CurvatureModel model;
  VariableSet variables;
};

/// Initial design and variable set for a swimmer family.
FamilySetup family_setup(SwimmerFamily family, const Grid& grid, int mode_points, int gait_points,
                         std::uint64_t seed, double amplitude = 0.5);

struct SwimmerResult {
  SwimmerFamily family{SwimmerFamily::serpenoid};
  double efficiency = 0.0;
  double normalized = 0.0;
  int best_restart = 0;
  std::vector<double> restart_efficiencies;
  OptimizationTrace best;
};

struct CompareSettings {
  int restarts = 5;
  std::uint64_t seed = 1;
  int threads = 1;
  int mode_points = 10;
  int gait_points = 10;
  double amplitude = 0.5;
  Grid grid{};
  OptimizerSettings optimizer{};
  std::vector<SwimmerFamily> families = all_swimmer_families();
};

/// Best-of-restarts optimization per family; restart r of every family uses seed + r.
SwimmerResult optimize_family(SwimmerFamily family, const Regime& regime, const CompareSettings& settings);

/// Ranked (descending efficiency) results, normalized by the best.
std::vector<SwimmerResult> compare_swimmers(const Regime& regime, const CompareSettings& settings = {});

}  // namespace geoswim
