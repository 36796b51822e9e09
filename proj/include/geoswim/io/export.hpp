#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "geoswim/hydrodynamics.hpp"
#include "geoswim/optimizer.hpp"
#include "geoswim/power.hpp"
#include "geoswim/shape.hpp"

namespace geoswim::io {

// CSV files have a header row, '.' decimals with 17 significant digits and
// '\n' line endings. Field grids are written time-major: every node for t_0,
// then every node for t_1, and so on.

/// quantity,value rows: displacement_{x,y,theta}, approx_{x,y,theta} (when
/// available), cycle_cost, rotational_cost, efficiency.
std::string report_csv(const EfficiencyReport& report);
/// t,power over the time samples.
std::string power_csv(const CostBreakdown& cost, const Grid& grid);
/// t,s,x,y,theta: node frames in the geometric-center frame.
std::string backbone_csv(const CurvatureModel& model);
/// t,s,kappa,kappa_t.
std::string curvature_csv(const CurvatureModel& model);
/// t,s,A_x,A_y,A_theta: local connection per node.
std::string connection_csv(const CurvatureModel& model, const Regime& regime);
/// t,s,d_x,d_y,d_theta: gradient density of the approximated displacement.
std::string gradient_csv(const CurvatureModel& model, const Regime& regime);
/// s,s2,D_x,D_y,D_theta: constraint curvature at the gait's mean shape.
std::string constraint_curvature_csv(const CurvatureModel& model, const Regime& regime);
/// iteration,efficiency,displacement,cost,step,gradient_norm.
std::string trace_csv(const OptimizationTrace& trace);
/// family,efficiency,normalized,best_restart,restart_0..restart_{n-1}.
std::string compare_csv(const std::vector<SwimmerResult>& results);

struct SweepRow {
  double scale = 0.0;
  EfficiencyReport report;
};
/// scale,displacement_{x,y,theta},approx_{x,y,theta},cycle_cost,efficiency.
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Whisker per node in the geometric-center frame: the planar part of
/// mu * xi_body (drag force at low Re, added linear momentum at high Re),
/// rotated out of the section frame. Returned as 2 x nodes.
Eigen::Matrix2Xd whisker_vectors(const CurvatureModel& model, const Regime& regime, double t);

/// One SVG snapshot: backbone polyline colored red (negative curvature),
/// white (zero), black (positive) relative to kappa_scale, with gray whiskers.
/// y points up, one body length is 500 px. Throws std::invalid_argument for t
/// outside [0, 1].
std::string render_svg(const CurvatureModel& model, const Regime& regime, double t, double kappa_scale);

/// Largest |kappa| over the model's grid, the default color scale.
double curvature_scale(const CurvatureModel& model);

/// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string checksum(const std::string& bytes);

}  // namespace geoswim::io
