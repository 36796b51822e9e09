#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "geoswim/io/config.hpp"
#include "geoswim/io/manifest.hpp"

namespace geoswim::io {

enum ExitCode { kSuccess = 0, kFailure = 1, kConfigError = 2, kNumericalFailure = 3 };

/// Named export contents of one run, before they are written to disk.
using ExportSet = std::map<std::string, std::string>;

struct CommandOutput {
  RunManifest manifest;
  ExportSet files;
};

// Each command computes its exports in memory; write_outputs() persists
// them plus manifest.json into config.output.

/// Exact and approximate displacement, cost and efficiency of the configured
/// design, plus the requested field export.
CommandOutput cmd_evaluate(const RunConfig& config);
/// One optimization from the configured design; trace, report and frames.
CommandOutput cmd_optimize(const RunConfig& config);
/// Best-of-restarts comparison of every swimmer family.
CommandOutput cmd_compare(const RunConfig& config);
/// SVG snapshots of the configured design at render_times (or `frames` evenly spaced times).
CommandOutput cmd_render(const RunConfig& config);
/// Amplitude sweep: the configured gait scaled by each sweep scale.
CommandOutput cmd_sweep(const RunConfig& config);

CommandOutput run_command(const std::string& command, const RunConfig& config);

/// Writes every export and manifest.json; returns the manifest path.
std::string write_outputs(const CommandOutput& output, const std::string& directory);

struct ReplayCheck {
  std::vector<std::string> identical;
  std::vector<std::string> differing;  // files whose checksum changed or that are missing
  bool ok() const { return differing.empty(); }
};

/// Re-runs the manifest's command from its config snapshot into `directory`
/// and compares checksums against the recorded ones.
ReplayCheck replay(const RunManifest& manifest, const std::string& directory);

/// Command-line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace geoswim::io
