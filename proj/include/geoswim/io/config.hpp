#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "geoswim/hydrodynamics.hpp"
#include "geoswim/optimizer.hpp"
#include "geoswim/shape.hpp"

namespace geoswim::io {

/// Everything a command needs to reproduce a run.
///
/// Text form: one `key = value` per line, keys are dotted (`grid.segments`),
/// `#` starts a comment, blank lines are ignored. Matrices are written as rows
/// separated by `;` with `,` between entries. Unknown or repeated keys are errors.
struct RunConfig {
  Regime regime{LowReynolds{}};
  SwimmerFamily swimmer{SwimmerFamily::serpenoid};
  Grid grid{};
  int mode_points = 10;
  int gait_points = 10;
  OptimizerSettings optimizer{};
  int restarts = 5;
  std::uint64_t seed = 1;
  std::string output = "out";
  std::string export_field = "none";  // connection, gradient, curvature or none
  int frames = 8;
  std::vector<double> render_times;   // empty: `frames` evenly spaced times over the period
  double amplitude = 0.5;             // random initial gait amplitude
  std::vector<double> sweep_scales = {0.05, 0.1, 0.2, 0.5, 1.0};
  /// Explicit design; when absent the family's seeded initial design is used.
  std::optional<Eigen::MatrixXd> modes;
  std::optional<Eigen::MatrixXd> gait;

  bool operator==(const RunConfig& other) const;
};

/// Parses the text form. Throws ConfigError carrying the line and key.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical text form; parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& config);

void validate(const RunConfig& config);

/// Design the config describes: the explicit matrices when given, otherwise
/// the family's initial design for the configured seed.
CurvatureModel initial_model(const RunConfig& config);
VariableSet variable_set(const RunConfig& config);

/// %.17g, the number format used by every exporter.
std::string format_number(double value);

}  // namespace geoswim::io
