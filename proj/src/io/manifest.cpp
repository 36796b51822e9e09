#include "geoswim/io/manifest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "geoswim/errors.hpp"

namespace geoswim::io {

namespace {

using Json = nlohmann::ordered_json;

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd json_matrix(const Json& rows, const std::string& field) {
  if (!rows.is_array()) throw ConfigError(0, field, "expected an array of rows");
  if (rows.empty()) return {};
  const std::size_t cols = rows.front().size();
  Eigen::MatrixXd out(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != cols) throw ConfigError(0, field, "ragged matrix");
    for (std::size_t j = 0; j < cols; ++j) {
      if (!rows[i][j].is_number()) throw ConfigError(0, field, "non-numeric entry");
      out(i, j) = rows[i][j].get<double>();
    }
  }
  return out;
}

const Json& member(const Json& object, const char* key) {
  if (!object.is_object() || !object.contains(key)) throw ConfigError(0, key, "missing from manifest");
  return object.at(key);
}

std::string text(const Json& object, const char* key) {
  const Json& v = member(object, key);
  if (!v.is_string()) throw ConfigError(0, key, "expected a string");
  return v.get<std::string>();
}

}  // namespace

DesignRecord design_record(const std::string& name, SwimmerFamily family, const CurvatureModel& model) {
  DesignRecord out;
  out.name = name;
  out.family = to_string(family);
  if (model.modes().kind() == ModeKind::spline) out.modes = model.modes().control_points();
  out.gait = model.gait().control_points();
  return out;
}

ReportRecord report_record(const std::string& name, const EfficiencyReport& report) {
  ReportRecord out;
  out.name = name;
  out.values = {{"displacement_x", report.displacement.x},
                {"displacement_y", report.displacement.y},
                {"displacement_theta", report.displacement.theta}};
  if (report.approximation) {
    out.values.emplace_back("approx_x", (*report.approximation)(0));
    out.values.emplace_back("approx_y", (*report.approximation)(1));
    out.values.emplace_back("approx_theta", (*report.approximation)(2));
  }
  out.values.emplace_back("cycle_cost", report.cost.cycle_cost);
  out.values.emplace_back("rotational_cost", report.cost.rotational_cost);
  out.values.emplace_back("efficiency", report.efficiency);
  return out;
}

RunConfig config_for_design(const RunConfig& config, const DesignRecord& design) {
  RunConfig out = config;
  out.swimmer = swimmer_family_from_string(design.family);
  out.modes.reset();
  if (design.modes.size() > 0) out.modes = design.modes;
  out.gait = design.gait;
  validate(out);
  return out;
}

std::string emit_manifest(const RunManifest& manifest) {
  Json root;
  root["tool"] = manifest.tool;
  root["version"] = manifest.version;
  root["command"] = manifest.command;
  root["config"] = emit_config(manifest.config);
  Json designs = Json::array();
  for (const DesignRecord& d : manifest.designs) {
    Json entry;
    entry["name"] = d.name;
    entry["family"] = d.family;
    entry["modes"] = matrix_json(d.modes);
    entry["gait"] = matrix_json(d.gait);
    designs.push_back(std::move(entry));
  }
  root["designs"] = std::move(designs);
  Json reports = Json::array();
  for (const ReportRecord& r : manifest.reports) {
    Json entry;
    entry["name"] = r.name;
    for (const auto& [key, value] : r.values) entry[key] = value;
    reports.push_back(std::move(entry));
  }
  root["reports"] = std::move(reports);
  Json files = Json::object();
  for (const auto& [name, sum] : manifest.files) files[name] = sum;
  root["files"] = std::move(files);
  return root.dump(2) + "\n";
}

RunManifest parse_manifest(const std::string& body) {
  Json root;
  try {
    root = Json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(0, "", std::string("manifest is not valid JSON: ") + e.what());
  }
  RunManifest out;
  out.tool = text(root, "tool");
  out.version = text(root, "version");
  out.command = text(root, "command");
  out.config = parse_config(text(root, "config"));
  for (const Json& entry : member(root, "designs")) {
    DesignRecord d;
    d.name = text(entry, "name");
    d.family = text(entry, "family");
    d.modes = json_matrix(member(entry, "modes"), "modes");
    d.gait = json_matrix(member(entry, "gait"), "gait");
    out.designs.push_back(std::move(d));
  }
  for (const Json& entry : member(root, "reports")) {
    ReportRecord r;
    for (const auto& [key, value] : entry.items()) {
      if (key == "name") {
        r.name = value.get<std::string>();
      } else if (value.is_number()) {
        r.values.emplace_back(key, value.get<double>());
      }
    }
    out.reports.push_back(std::move(r));
  }
  for (const auto& [name, sum] : member(root, "files").items()) out.files[name] = sum.get<std::string>();
  return out;
}

RunManifest load_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "", "cannot read manifest '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_manifest(os.str());
}

}  // namespace geoswim::io
