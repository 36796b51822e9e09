#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "geoswim/io/config.hpp"
#include "geoswim/power.hpp"

namespace geoswim::io {

inline constexpr const char* kToolVersion = "0.1.0";

struct DesignRecord {
  std::string name;          // "final", "initial" or a swimmer family
  std::string family;
  Eigen::MatrixXd modes;     // mode control points, empty for closed-form modes
  Eigen::MatrixXd gait;      // gait control points
};

struct ReportRecord {
  std::string name;
  std::vector<std::pair<std::string, double>> values;  // same quantities as report.csv
};

/// Record of one command run, stored as JSON next to the exports.
struct RunManifest {
  std::string tool = "geoswim";
  std::string version = kToolVersion;
  std::string command;
  RunConfig config;
  std::vector<DesignRecord> designs;
  std::vector<ReportRecord> reports;
  std::map<std::string, std::string> files;  // exported file name -> checksum
};

DesignRecord design_record(const std::string& name, SwimmerFamily family, const CurvatureModel& model);
ReportRecord report_record(const std::string& name, const EfficiencyReport& report);

/// Config with the recorded design substituted as the explicit design.
RunConfig config_for_design(const RunConfig& config, const DesignRecord& design);

std::string emit_manifest(const RunManifest& manifest);
/// Throws ConfigError for malformed or incomplete manifests.
RunManifest parse_manifest(const std::string& text);
RunManifest load_manifest(const std::string& path);

}  // namespace geoswim::io
