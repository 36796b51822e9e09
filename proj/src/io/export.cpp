#include "geoswim/io/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "geoswim/backbone.hpp"
#include "geoswim/io/config.hpp"
#include "geoswim/locomotion.hpp"

namespace geoswim::io {

namespace {

class Csv {
 public:
  explicit Csv(const std::string& header) { out_ << header << '\n'; }

  Csv& row(std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
      if (!first) out_ << ',';
      out_ << format_number(v);
      first = false;
    }
    out_ << '\n';
    return *this;
  }

  Csv& labeled(const std::string& label, const std::vector<double>& values) {
    out_ << label;
    for (double v : values) out_ << ',' << format_number(v);
    out_ << '\n';
    return *this;
  }

  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

std::string pixels(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.3f", v);
  return buffer;
}

// Red for negative, white at zero, black for positive curvature.
std::string curvature_color(double kappa, double scale) {
  const double v = scale > 0.0 ? std::clamp(kappa / scale, -1.0, 1.0) : 0.0;
  int r, g, b;
  if (v < 0.0) {
    r = 255;
    g = b = static_cast<int>(std::lround(255.0 * (1.0 + v)));
  } else {
    r = g = b = static_cast<int>(std::lround(255.0 * (1.0 - v)));
  }
  char buffer[16];
  std::snprintf(buffer, sizeof buffer, "#%02x%02x%02x", r, g, b);
  return buffer;
}

void check_time(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("render time must lie in [0, 1]");
}

}  // namespace

std::string report_csv(const EfficiencyReport& report) {
  std::ostringstream os;
  os << "quantity,value\n";
  auto put = [&](const char* name, double v) { os << name << ',' << format_number(v) << '\n'; };
  put("displacement_x", report.displacement.x);
  put("displacement_y", report.displacement.y);
  put("displacement_theta", report.displacement.theta);
  if (report.approximation) {
    put("approx_x", (*report.approximation)(0));
    put("approx_y", (*report.approximation)(1));
    put("approx_theta", (*report.approximation)(2));
  }
  put("cycle_cost", report.cost.cycle_cost);
  put("rotational_cost", report.cost.rotational_cost);
  put("efficiency", report.efficiency);
  return os.str();
}

std::string power_csv(const CostBreakdown& cost, const Grid& grid) {
  Csv csv("t,power");
  for (Eigen::Index k = 0; k < cost.instantaneous.size(); ++k) csv.row({grid.time(static_cast<int>(k)), cost.instantaneous(k)});
  return csv.str();
}

std::string backbone_csv(const CurvatureModel& model) {
  const Grid& grid = model.grid();
  Csv csv("t,s,x,y,theta");
  for (int k = 0; k < grid.time_samples; ++k) {
    const double t = grid.time(k);
    const BackboneState state = backbone_state(model.sample(t).curvature, grid);
    for (int i = 0; i < grid.nodes(); ++i) {
      const Pose2d& g = state.frames[i];
      csv.row({t, grid.node(i), g.x, g.y, g.theta});
    }
  }
  return csv.str();
}

std::string curvature_csv(const CurvatureModel& model) {
  const Grid& grid = model.grid();
  Csv csv("t,s,kappa,kappa_t");
  for (int k = 0; k < grid.time_samples; ++k) {
    const double t = grid.time(k);
    const ShapeSample shape = model.sample(t);
    for (int i = 0; i < grid.nodes(); ++i) csv.row({t, grid.node(i), shape.curvature(i), shape.curvature_rate(i)});
  }
  return csv.str();
}

std::string connection_csv(const CurvatureModel& model, const Regime& regime) {
  const Grid& grid = model.grid();
  Csv csv("t,s,A_x,A_y,A_theta");
  for (int k = 0; k < grid.time_samples; ++k) {
    const double t = grid.time(k);
    const Eigen::Matrix3Xd a = connection_at(model.sample(t).curvature, grid, regime).values;
    for (int i = 0; i < grid.nodes(); ++i) csv.row({t, grid.node(i), a(0, i), a(1, i), a(2, i)});
  }
  return csv.str();
}

std::string gradient_csv(const CurvatureModel& model, const Regime& regime) {
  const Grid& grid = model.grid();
  const auto g = displacement_gradients(model, regime, {}, true);
  Csv csv("t,s,d_x,d_y,d_theta");
  for (int k = 0; k < grid.time_samples; ++k) {
    for (int i = 0; i < grid.nodes(); ++i) {
      csv.row({grid.time(k), grid.node(i), g[0].grid(i, k), g[1].grid(i, k), g[2].grid(i, k)});
    }
  }
  return csv.str();
}

std::string constraint_curvature_csv(const CurvatureModel& model, const Regime& regime) {
  const Grid& grid = model.grid();
  const CurvatureTwoForm form = constraint_curvature(mean_shape(model), grid, regime);
  Csv csv("s,s2,D_x,D_y,D_theta");
  for (int j = 0; j < grid.nodes(); ++j) {
    for (int l = 0; l < grid.nodes(); ++l) {
      const Eigen::Vector3d d = form.at(j, l);
      csv.row({grid.node(j), grid.node(l), d(0), d(1), d(2)});
    }
  }
  return csv.str();
}

std::string trace_csv(const OptimizationTrace& trace) {
  Csv csv("iteration,efficiency,displacement,cost,step,gradient_norm");
  for (const IterationRecord& r : trace.iterations) {
    csv.row({static_cast<double>(r.iteration), r.efficiency, r.displacement, r.cost, r.step, r.gradient_norm});
  }
  return csv.str();
}

std::string compare_csv(const std::vector<SwimmerResult>& results) {
  std::size_t restarts = 0;
  for (const auto& r : results) restarts = std::max(restarts, r.restart_efficiencies.size());
  std::string header = "family,efficiency,normalized,best_restart";
  for (std::size_t i = 0; i < restarts; ++i) header += ",restart_" + std::to_string(i);
  Csv csv(header);
  for (const auto& r : results) {
    std::vector<double> values = {r.efficiency, r.normalized, static_cast<double>(r.best_restart)};
    values.insert(values.end(), r.restart_efficiencies.begin(), r.restart_efficiencies.end());
    csv.labeled(to_string(r.family), values);
  }
  return csv.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  Csv csv("scale,displacement_x,displacement_y,displacement_theta,approx_x,approx_y,approx_theta,cycle_cost,efficiency");
  for (const SweepRow& row : rows) {
    const Pose2d& g = row.report.displacement;
    const Twist2d approx = row.report.approximation.value_or(Twist2d::Zero());
    csv.row({row.scale, g.x, g.y, g.theta, approx(0), approx(1), approx(2), row.report.cost.cycle_cost,
             row.report.efficiency});
  }
  return csv.str();
}

Eigen::Matrix2Xd whisker_vectors(const CurvatureModel& model, const Regime& regime, double t) {
  check_time(t);
  const ShapeSample shape = model.sample(t);
  const BackboneState state = backbone_state(shape.curvature, model.grid());
  const Twist2d xi_base = body_velocity(local_connection(pullback_blocks(state, regime)), shape.curvature_rate,
                                        state.weights);
  const Eigen::Matrix3Xd xi = frame_body_velocities(state, shape.curvature_rate, xi_base);
  const Eigen::Matrix3d mu = local_metric(regime);
  Eigen::Matrix2Xd out(2, state.nodes());
  for (int i = 0; i < state.nodes(); ++i) {
    const Eigen::Vector3d f = mu * xi.col(i);
    out.col(i) = state.frames[i].rotation() * f.head<2>();
  }
  return out;
}

double curvature_scale(const CurvatureModel& model) { return curvature_grid(model).cwiseAbs().maxCoeff(); }

std::string render_svg(const CurvatureModel& model, const Regime& regime, double t, double kappa_scale) {
  check_time(t);
  constexpr double kBody = 500.0;  // px per body length
  constexpr double kSize = 700.0;
  const double center = kSize / 2.0;
  const ShapeSample shape = model.sample(t);
  const BackboneState state = backbone_state(shape.curvature, model.grid());
  const Eigen::Matrix2Xd whiskers = whisker_vectors(model, regime, t);
  const double longest = whiskers.colwise().norm().maxCoeff();
  const double whisker_scale = longest > 0.0 ? 0.1 / longest : 0.0;  // longest whisker = 0.1 body lengths

  auto px = [&](double x) { return pixels(center + kBody * x); };
  auto py = [&](double y) { return pixels(center - kBody * y); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
     << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"#dce6f0\"/>\n";
  os << "<text x=\"12\" y=\"24\" font-family=\"monospace\" font-size=\"14\">t = " << pixels(t) << "</text>\n";
  os << "<g stroke=\"#808080\" stroke-width=\"1.5\">\n";
  for (int i = 0; i < state.nodes(); ++i) {
    const Pose2d& g = state.frames[i];
    const Eigen::Vector2d tip = g.translation() + whisker_scale * whiskers.col(i);
    os << "<line x1=\"" << px(g.x) << "\" y1=\"" << py(g.y) << "\" x2=\"" << px(tip(0)) << "\" y2=\"" << py(tip(1))
       << "\"/>\n";
  }
  os << "</g>\n<g stroke-width=\"6\" stroke-linecap=\"round\">\n";
  for (int i = 0; i + 1 < state.nodes(); ++i) {
    const Pose2d& a = state.frames[i];
    const Pose2d& b = state.frames[i + 1];
    const double kappa = 0.5 * (shape.curvature(i) + shape.curvature(i + 1));
    os << "<line x1=\"" << px(a.x) << "\" y1=\"" << py(a.y) << "\" x2=\"" << px(b.x) << "\" y2=\"" << py(b.y)
       << "\" stroke=\"" << curvature_color(kappa, kappa_scale) << "\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string checksum(const std::string& bytes) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

}  // namespace geoswim::io
