#include "geoswim/io/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "geoswim/errors.hpp"

namespace geoswim::io {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

struct Field {
  int line;
  std::string key;
  std::string value;

  [[noreturn]] void fail(const std::string& message) const { throw ConfigError(line, key, message); }

  double number() const {
    const char* begin = value.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (value.empty() || end != begin + value.size() || errno == ERANGE || !std::isfinite(v)) {
      fail("expected a finite number, got '" + value + "'");
    }
    return v;
  }

  long long integer(long long lo, long long hi) const {
    const char* begin = value.c_str();
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(begin, &end, 10);
    if (value.empty() || end != begin + value.size() || errno == ERANGE) fail("expected an integer, got '" + value + "'");
    if (v < lo || v > hi) fail("value " + value + " out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
  }

  std::uint64_t unsigned_integer() const {
    const char* begin = value.c_str();
    char* end = nullptr;
    errno = 0;
    if (value.empty() || value[0] == '-') fail("expected a non-negative integer, got '" + value + "'");
    const unsigned long long v = std::strtoull(begin, &end, 10);
    if (end != begin + value.size() || errno == ERANGE) fail("expected a non-negative integer, got '" + value + "'");
    return v;
  }

  double positive() const {
    const double v = number();
    if (!(v > 0.0)) fail("must be positive");
    return v;
  }

  std::vector<double> list() const {
    std::vector<double> out;
    for (const std::string& item : split(value, ',')) {
      Field entry{line, key, item};
      out.push_back(entry.number());
    }
    if (out.empty()) fail("expected at least one number");
    return out;
  }

  Eigen::MatrixXd matrix() const {
    std::vector<std::vector<double>> rows;
    for (const std::string& row : split(value, ';')) {
      Field entry{line, key, row};
      rows.push_back(entry.list());
      if (rows.back().size() != rows.front().size()) fail("matrix rows differ in length");
    }
    if (rows.empty()) fail("expected a matrix");
    Eigen::MatrixXd out(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < rows[i].size(); ++j) out(i, j) = rows[i][j];
    }
    return out;
  }
};

std::string emit_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ", " : "") + format_number(values[i]);
  return out;
}

std::string emit_matrix(const Eigen::MatrixXd& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) out += "; ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) out += (j ? ", " : "") + format_number(m(i, j));
  }
  return out;
}

bool same_matrix(const std::optional<Eigen::MatrixXd>& a, const std::optional<Eigen::MatrixXd>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  return a->rows() == b->rows() && a->cols() == b->cols() && *a == *b;
}

bool same_regime(const Regime& a, const Regime& b) {
  if (a.index() != b.index()) return false;
  if (is_low_reynolds(a)) return std::get<LowReynolds>(a).drag_ratio == std::get<LowReynolds>(b).drag_ratio;
  const auto& x = std::get<HighReynolds>(a);
  const auto& y = std::get<HighReynolds>(b);
  return x.density == y.density && x.radius == y.radius;
}

int mode_count(SwimmerFamily family, int mode_points) {
  switch (family) {
    case SwimmerFamily::three_link:
    case SwimmerFamily::serpenoid:
    case SwimmerFamily::two_mode: return 2;
    case SwimmerFamily::three_mode: return 3;
    case SwimmerFamily::infinite: return mode_points;
  }
  return 2;
}

}  // namespace

std::string format_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

bool RunConfig::operator==(const RunConfig& other) const {
  const OptimizerSettings& a = optimizer;
  const OptimizerSettings& b = other.optimizer;
  return same_regime(regime, other.regime) && swimmer == other.swimmer && grid.segments == other.grid.segments &&
         grid.time_samples == other.grid.time_samples && mode_points == other.mode_points &&
         gait_points == other.gait_points && a.rel_tol == b.rel_tol && a.patience == b.patience &&
         a.max_iters == b.max_iters && a.kappa_max == b.kappa_max && a.rms_curvature == b.rms_curvature && a.armijo == b.armijo && a.shrink == b.shrink &&
         a.max_backtracks == b.max_backtracks && a.initial_step == b.initial_step && a.cost_step == b.cost_step &&
         a.memory == b.memory && a.threads == b.threads && restarts == other.restarts && seed == other.seed &&
         output == other.output && export_field == other.export_field && frames == other.frames &&
         amplitude == other.amplitude && sweep_scales == other.sweep_scales && render_times == other.render_times && same_matrix(modes, other.modes) &&
         same_matrix(gait, other.gait);
}

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  std::string regime_kind = "low";
  double drag_ratio = LowReynolds{}.drag_ratio;
  double density = HighReynolds{}.density;
  double radius = HighReynolds{}.radius;
  int regime_line = 0;

  using Setter = std::function<void(const Field&)>;
  OptimizerSettings& opt = config.optimizer;
  const std::map<std::string, Setter> setters = {
      {"regime.kind",
       [&](const Field& f) {
         if (f.value != "low" && f.value != "high") f.fail("expected 'low' or 'high'");
         regime_kind = f.value;
         regime_line = f.line;
       }},
      {"regime.drag_ratio", [&](const Field& f) { drag_ratio = f.positive(); }},
      {"regime.density", [&](const Field& f) { density = f.positive(); }},
      {"regime.radius",
       [&](const Field& f) {
         radius = f.positive();
         if (!(radius < 0.5)) f.fail("radius must be below half a body length");
       }},
      {"swimmer",
       [&](const Field& f) {
         try {
           config.swimmer = swimmer_family_from_string(f.value);
         } catch (const std::invalid_argument&) {
           f.fail("unknown swimmer '" + f.value + "'");
         }
       }},
      {"grid.segments", [&](const Field& f) { config.grid.segments = static_cast<int>(f.integer(2, 100000)); }},
      {"grid.time_samples", [&](const Field& f) { config.grid.time_samples = static_cast<int>(f.integer(8, 1000000)); }},
      {"spline.mode_points", [&](const Field& f) { config.mode_points = static_cast<int>(f.integer(3, 1000)); }},
      {"spline.gait_points", [&](const Field& f) { config.gait_points = static_cast<int>(f.integer(3, 1000)); }},
      {"optimizer.rel_tol", [&](const Field& f) { opt.rel_tol = f.positive(); }},
      {"optimizer.patience", [&](const Field& f) { opt.patience = static_cast<int>(f.integer(1, 1000000)); }},
      {"optimizer.max_iters", [&](const Field& f) { opt.max_iters = static_cast<int>(f.integer(0, 100000000)); }},
      {"optimizer.kappa_max", [&](const Field& f) { opt.kappa_max = f.positive(); }},
      {"optimizer.rms_curvature",
       [&](const Field& f) {
         opt.rms_curvature = f.number();
         if (opt.rms_curvature < 0.0) f.fail("must be non-negative (0 leaves the amplitude free)");
       }},
      {"optimizer.armijo",
       [&](const Field& f) {
         opt.armijo = f.positive();
         if (!(opt.armijo < 1.0)) f.fail("must be below 1");
       }},
      {"optimizer.shrink",
       [&](const Field& f) {
         opt.shrink = f.positive();
         if (!(opt.shrink < 1.0)) f.fail("must be below 1");
       }},
      {"optimizer.max_backtracks", [&](const Field& f) { opt.max_backtracks = static_cast<int>(f.integer(0, 1000)); }},
      {"optimizer.initial_step", [&](const Field& f) { opt.initial_step = f.positive(); }},
      {"optimizer.cost_step", [&](const Field& f) { opt.cost_step = f.positive(); }},
      {"optimizer.memory", [&](const Field& f) { opt.memory = static_cast<int>(f.integer(0, 1000)); }},
      {"optimizer.threads", [&](const Field& f) { opt.threads = static_cast<int>(f.integer(1, 1024)); }},
      {"optimizer.restarts", [&](const Field& f) { config.restarts = static_cast<int>(f.integer(1, 100000)); }},
      {"optimizer.amplitude", [&](const Field& f) { config.amplitude = f.positive(); }},
      {"seed", [&](const Field& f) { config.seed = f.unsigned_integer(); }},
      {"output",
       [&](const Field& f) {
         if (f.value.empty()) f.fail("output directory must not be empty");
         config.output = f.value;
       }},
      {"export.field",
       [&](const Field& f) {
         if (f.value != "connection" && f.value != "gradient" && f.value != "curvature" && f.value != "none") {
           f.fail("expected connection, gradient, curvature or none");
         }
         config.export_field = f.value;
       }},
      {"export.frames", [&](const Field& f) { config.frames = static_cast<int>(f.integer(1, 10000)); }},
      {"render.times",
       [&](const Field& f) {
         config.render_times = f.list();
         for (double t : config.render_times) {
           if (!(t >= 0.0 && t <= 1.0)) f.fail("render times must lie in [0, 1]");
         }
       }},
      {"sweep.scales", [&](const Field& f) { config.sweep_scales = f.list(); }},
      {"design.modes", [&](const Field& f) { config.modes = f.matrix(); }},
      {"design.gait", [&](const Field& f) { config.gait = f.matrix(); }},
  };

  std::set<std::string> seen;
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "", "expected 'key = value'");
    const Field field{line, trim(content.substr(0, eq)), trim(content.substr(eq + 1))};
    if (field.key.empty()) throw ConfigError(line, "", "missing key");
    const auto setter = setters.find(field.key);
    if (setter == setters.end()) field.fail("unknown key");
    if (!seen.insert(field.key).second) field.fail("repeated key");
    setter->second(field);
  }

  if (regime_kind == "low") {
    if (seen.count("regime.density") || seen.count("regime.radius")) {
      throw ConfigError(regime_line, "regime.kind", "density and radius only apply to the high-Re regime");
    }
    config.regime = LowReynolds{drag_ratio};
  } else {
    if (seen.count("regime.drag_ratio")) {
      throw ConfigError(regime_line, "regime.kind", "drag_ratio only applies to the low-Re regime");
    }
    config.regime = HighReynolds{density, radius};
  }
  validate(config);
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "", "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

std::string emit_config(const RunConfig& config) {
  std::ostringstream os;
  auto put = [&](const std::string& key, const std::string& value) { os << key << " = " << value << "\n"; };
  const OptimizerSettings& opt = config.optimizer;
  if (is_low_reynolds(config.regime)) {
    put("regime.kind", "low");
    put("regime.drag_ratio", format_number(std::get<LowReynolds>(config.regime).drag_ratio));
  } else {
    const auto& high = std::get<HighReynolds>(config.regime);
    put("regime.kind", "high");
    put("regime.density", format_number(high.density));
    put("regime.radius", format_number(high.radius));
  }
  put("swimmer", to_string(config.swimmer));
  put("grid.segments", std::to_string(config.grid.segments));
  put("grid.time_samples", std::to_string(config.grid.time_samples));
  put("spline.mode_points", std::to_string(config.mode_points));
  put("spline.gait_points", std::to_string(config.gait_points));
  put("optimizer.rel_tol", format_number(opt.rel_tol));
  put("optimizer.patience", std::to_string(opt.patience));
  put("optimizer.max_iters", std::to_string(opt.max_iters));
  put("optimizer.kappa_max", format_number(opt.kappa_max));
  put("optimizer.rms_curvature", format_number(opt.rms_curvature));
  put("optimizer.armijo", format_number(opt.armijo));
  put("optimizer.shrink", format_number(opt.shrink));
  put("optimizer.max_backtracks", std::to_string(opt.max_backtracks));
  put("optimizer.initial_step", format_number(opt.initial_step));
  put("optimizer.cost_step", format_number(opt.cost_step));
  put("optimizer.memory", std::to_string(opt.memory));
  put("optimizer.threads", std::to_string(opt.threads));
  put("optimizer.restarts", std::to_string(config.restarts));
  put("optimizer.amplitude", format_number(config.amplitude));
  put("seed", std::to_string(config.seed));
  put("output", config.output);
  put("export.field", config.export_field);
  put("export.frames", std::to_string(config.frames));
  put("sweep.scales", emit_list(config.sweep_scales));
  if (!config.render_times.empty()) put("render.times", emit_list(config.render_times));
  if (config.modes) put("design.modes", emit_matrix(*config.modes));
  if (config.gait) put("design.gait", emit_matrix(*config.gait));
  return os.str();
}

void validate(const RunConfig& config) {
  const bool spline_modes =
      config.swimmer == SwimmerFamily::two_mode || config.swimmer == SwimmerFamily::three_mode;
  const int count = mode_count(config.swimmer, config.mode_points);
  if (config.modes) {
    if (!spline_modes) throw ConfigError(0, "design.modes", "only spline-mode swimmers take mode control points");
    if (config.modes->rows() != count || config.modes->cols() != config.mode_points) {
      throw ConfigError(0, "design.modes",
                        "expected " + std::to_string(count) + " x " + std::to_string(config.mode_points) + " entries");
    }
  }
  if (config.gait) {
    if (config.gait->rows() != count || config.gait->cols() != config.gait_points) {
      throw ConfigError(0, "design.gait",
                        "expected " + std::to_string(count) + " x " + std::to_string(config.gait_points) + " entries");
    }
  }
  if (config.output.find('\n') != std::string::npos) throw ConfigError(0, "output", "newline in path");
}

CurvatureModel initial_model(const RunConfig& config) {
  validate(config);
  FamilySetup setup = family_setup(config.swimmer, config.grid, config.mode_points, config.gait_points, config.seed,
                                   config.amplitude);
  CurvatureModel model = setup.model;
  if (config.modes) model = model.with_modes(*config.modes);
  if (config.gait) model = model.with_gait(*config.gait);
  return model;
}

VariableSet variable_set(const RunConfig& config) {
  switch (config.swimmer) {
    case SwimmerFamily::two_mode:
    case SwimmerFamily::three_mode: return VariableSet::co_design;
    case SwimmerFamily::infinite: return VariableSet::infinite;
    default: return VariableSet::gait_only;
  }
}

}  // namespace geoswim::io
