#include "geoswim/io/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "geoswim/errors.hpp"
#include "geoswim/io/export.hpp"
#include "geoswim/optimizer.hpp"

namespace geoswim::io {

namespace {

namespace fs = std::filesystem;

EfficiencyReport full_report(const CurvatureModel& model, const RunConfig& config) {
  EfficiencyOptions options;
  options.component = config.optimizer.component;
  options.trajectory = config.optimizer.trajectory;
  options.with_approximation = true;
  return efficiency(model, config.regime, options);
}

std::vector<double> frame_times(const RunConfig& config) {
  if (!config.render_times.empty()) return config.render_times;
  std::vector<double> out;
  for (int k = 0; k < config.frames; ++k) out.push_back(static_cast<double>(k) / config.frames);
  return out;
}

std::string frame_name(int index) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "frame_%02d.svg", index);
  return buffer;
}

void add_frames(ExportSet& files, const CurvatureModel& model, const RunConfig& config) {
  const double scale = curvature_scale(model);
  const std::vector<double> times = frame_times(config);
  for (std::size_t k = 0; k < times.size(); ++k) {
    files[frame_name(static_cast<int>(k))] = render_svg(model, config.regime, times[k], scale);
  }
}

void add_field(ExportSet& files, const CurvatureModel& model, const RunConfig& config) {
  if (config.export_field == "connection") {
    files["connection.csv"] = connection_csv(model, config.regime);
  } else if (config.export_field == "gradient") {
    files["gradient.csv"] = gradient_csv(model, config.regime);
  } else if (config.export_field == "curvature") {
    files["curvature.csv"] = curvature_csv(model);
    files["constraint_curvature.csv"] = constraint_curvature_csv(model, config.regime);
  }
}

CommandOutput start(const std::string& command, const RunConfig& config) {
  validate(config);
  CommandOutput out;
  out.manifest.command = command;
  out.manifest.config = config;
  return out;
}

void finish(CommandOutput& out) {
  for (const auto& [name, body] : out.files) out.manifest.files[name] = checksum(body);
}

void write_text(const fs::path& path, const std::string& body) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot write '" + path.string() + "'");
  file << body;
  if (!file) throw std::runtime_error("failed writing '" + path.string() + "'");
}

Regime regime_of_kind(const std::string& kind, const Regime& current) {
  const bool low = kind == "low";
  if (low == is_low_reynolds(current)) return current;
  return low ? Regime{LowReynolds{}} : Regime{HighReynolds{}};
}

}  // namespace

CommandOutput cmd_evaluate(const RunConfig& config) {
  CommandOutput out = start("evaluate", config);
  const CurvatureModel model = initial_model(config);
  const EfficiencyReport report = full_report(model, config);
  out.manifest.designs.push_back(design_record("final", config.swimmer, model));
  out.manifest.reports.push_back(report_record("final", report));
  out.files["report.csv"] = report_csv(report);
  out.files["power.csv"] = power_csv(report.cost, model.grid());
  out.files["backbone.csv"] = backbone_csv(model);
  add_field(out.files, model, config);
  finish(out);
  return out;
}

CommandOutput cmd_optimize(const RunConfig& config) {
  CommandOutput out = start("optimize", config);
  const CurvatureModel initial = initial_model(config);
  OptimizationProblem problem{config.regime, variable_set(config), initial, config.optimizer};
  const OptimizationTrace trace = optimize(problem);
  out.manifest.designs.push_back(design_record("initial", config.swimmer, initial));
  out.manifest.designs.push_back(design_record("final", config.swimmer, trace.final_model));
  out.manifest.reports.push_back(report_record("final", trace.final_report));
  out.files["trace.csv"] = trace_csv(trace);
  out.files["report.csv"] = report_csv(trace.final_report);
  add_frames(out.files, trace.final_model, config);
  add_field(out.files, trace.final_model, config);
  finish(out);
  return out;
}

CommandOutput cmd_compare(const RunConfig& config) {
  CommandOutput out = start("compare", config);
  CompareSettings settings;
  settings.restarts = config.restarts;
  settings.seed = config.seed;
  settings.threads = config.optimizer.threads;
  settings.mode_points = config.mode_points;
  settings.gait_points = config.gait_points;
  settings.amplitude = config.amplitude;
  settings.grid = config.grid;
  settings.optimizer = config.optimizer;
  settings.optimizer.threads = 1;  // parallelism goes to the restarts
  const std::vector<SwimmerResult> results = compare_swimmers(config.regime, settings);
  for (const SwimmerResult& r : results) {
    const std::string name = to_string(r.family);
    out.manifest.designs.push_back(design_record(name, r.family, r.best.final_model));
    out.manifest.reports.push_back(report_record(name, r.best.final_report));
    out.files["report_" + name + ".csv"] = report_csv(r.best.final_report);
  }
  out.files["compare.csv"] = compare_csv(results);
  finish(out);
  return out;
}

CommandOutput cmd_render(const RunConfig& config) {
  CommandOutput out = start("render", config);
  const CurvatureModel model = initial_model(config);
  out.manifest.designs.push_back(design_record("final", config.swimmer, model));
  add_frames(out.files, model, config);
  finish(out);
  return out;
}

CommandOutput cmd_sweep(const RunConfig& config) {
  CommandOutput out = start("sweep", config);
  const CurvatureModel model = initial_model(config);
  out.manifest.designs.push_back(design_record("final", config.swimmer, model));
  std::vector<SweepRow> rows;
  for (double scale : config.sweep_scales) {
    const CurvatureModel scaled = model.with_gait(scale * model.gait().control_points());
    rows.push_back({scale, full_report(scaled, config)});
  }
  out.files["sweep.csv"] = sweep_csv(rows);
  finish(out);
  return out;
}

CommandOutput run_command(const std::string& command, const RunConfig& config) {
  if (command == "evaluate") return cmd_evaluate(config);
  if (command == "optimize") return cmd_optimize(config);
  if (command == "compare") return cmd_compare(config);
  if (command == "render") return cmd_render(config);
  if (command == "sweep") return cmd_sweep(config);
  throw std::invalid_argument("unknown command '" + command + "'");
}

std::string write_outputs(const CommandOutput& output, const std::string& directory) {
  const fs::path dir(directory);
  fs::create_directories(dir);
  for (const auto& [name, body] : output.files) write_text(dir / name, body);
  const fs::path manifest = dir / "manifest.json";
  write_text(manifest, emit_manifest(output.manifest));
  return manifest.string();
}

ReplayCheck replay(const RunManifest& manifest, const std::string& directory) {
  RunConfig config = manifest.config;
  config.output = directory;
  const CommandOutput output = run_command(manifest.command, config);
  write_outputs(output, directory);
  ReplayCheck check;
  for (const auto& [name, sum] : manifest.files) {
    const auto found = output.manifest.files.find(name);
    if (found != output.manifest.files.end() && found->second == sum) {
      check.identical.push_back(name);
    } else {
      check.differing.push_back(name);
    }
  }
  for (const auto& [name, sum] : output.manifest.files) {
    if (!manifest.files.count(name)) check.differing.push_back(name);
  }
  return check;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometric gait and shape-mode optimization for planar continuum swimmers", "geoswim"};
  app.require_subcommand(1);

  std::string config_path, manifest_path, out_dir, regime, swimmer, export_field, from_path;
  std::optional<std::uint64_t> seed;
  std::vector<double> times;

  const std::vector<std::string> commands = {"evaluate", "optimize", "compare", "render", "sweep"};
  const std::map<std::string, std::string> help = {
      {"evaluate", "displacement, cost and efficiency of one design"},
      {"optimize", "optimize the design and gait for efficiency"},
      {"compare", "optimize and rank every swimmer family"},
      {"render", "SVG snapshots of a design over the period"},
      {"sweep", "efficiency over a range of gait amplitudes"}};
  for (const std::string& name : commands) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--config", config_path, "run configuration file")->check(CLI::ExistingFile);
    sub->add_option("--manifest", manifest_path, "replay a recorded run and verify its exports")
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "random seed");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--regime", regime, "fluid regime")->check(CLI::IsMember({"low", "high"}));
    sub->add_option("--swimmer", swimmer, "swimmer family")
        ->check(CLI::IsMember({"three-link", "serpenoid", "two-mode", "three-mode", "infinite"}));
    sub->add_option("--export", export_field, "field export")
        ->check(CLI::IsMember({"connection", "gradient", "curvature", "none"}));
    if (name == "render") {
      sub->add_option("--from", from_path, "render the final design of this manifest")->check(CLI::ExistingFile);
      sub->add_option("--times", times, "snapshot times in [0, 1]")->delimiter(',');
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "geoswim: " << e.what() << "\n";
    return kConfigError;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    if (!manifest_path.empty()) {
      const RunManifest manifest = load_manifest(manifest_path);
      if (manifest.command != command) {
        throw ConfigError(0, "command", "manifest records '" + manifest.command + "', not '" + command + "'");
      }
      const std::string dir = out_dir.empty() ? manifest.config.output + "_replay" : out_dir;
      const ReplayCheck check = replay(manifest, dir);
      out << "replay " << command << ": " << check.identical.size() << " files identical";
      if (!check.ok()) {
        out << ", " << check.differing.size() << " differ:";
        for (const auto& name : check.differing) out << ' ' << name;
        out << "\n";
        return kFailure;
      }
      out << "\n";
      return kSuccess;
    }

    RunConfig config = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (!from_path.empty()) {
      const RunManifest source = load_manifest(from_path);
      const DesignRecord* design = nullptr;
      for (const auto& d : source.designs) {
        if (d.name == "final") design = &d;
      }
      if (!design) {
        if (source.designs.empty()) throw ConfigError(0, "designs", "manifest has no design to render");
        design = &source.designs.front();
      }
      const RunConfig base = config_path.empty() ? source.config : config;
      config = config_for_design(base, *design);
    }
    if (seed) config.seed = *seed;
    if (!out_dir.empty()) config.output = out_dir;
    if (!regime.empty()) config.regime = regime_of_kind(regime, config.regime);
    if (!swimmer.empty()) config.swimmer = swimmer_family_from_string(swimmer);
    if (!export_field.empty()) config.export_field = export_field;
    if (!times.empty()) {
      for (double t : times) {
        if (!(t >= 0.0 && t <= 1.0)) throw ConfigError(0, "times", "render times must lie in [0, 1]");
      }
      config.render_times = times;
    }
    validate(config);

    const CommandOutput output = run_command(command, config);
    const std::string manifest = write_outputs(output, config.output);
    for (const ReportRecord& r : output.manifest.reports) {
      out << r.name;
      for (const auto& [key, value] : r.values) {
        if (key == "displacement_x" || key == "cycle_cost" || key == "efficiency") {
          out << ' ' << key << '=' << format_number(value);
        }
      }
      out << "\n";
    }
    out << "wrote " << output.files.size() << " files and " << manifest << "\n";
    return kSuccess;
  } catch (const ConfigError& e) {
    err << "geoswim: " << e.what() << "\n";
    return kConfigError;
  } catch (const NumericalError& e) {
    err << "geoswim: numerical failure in " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "geoswim: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace geoswim::io
