#include "geoswim/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "geoswim/errors.hpp"

namespace geoswim {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Runs body(i) for i in [0, count) over `threads` workers with a fixed
// interleaved assignment; every index writes only its own output slot.
template <typename Body>
void parallel_for(int count, int threads, const Body& body) {
  threads = std::clamp(threads, 1, std::max(count, 1));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(threads);
  for (int w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (int i = w; i < count; i += threads) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

Eigen::VectorXd row_major(const Eigen::MatrixXd& m) {
  Eigen::VectorXd out(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.segment(i * m.cols(), m.cols()) = m.row(i).transpose();
  return out;
}

Eigen::MatrixXd from_row_major(const Eigen::VectorXd& v, Eigen::Index offset, Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) out.row(i) = v.segment(offset + i * cols, cols).transpose();
  return out;
}

std::string describe(const Eigen::VectorXd& x) {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x(i);
  os << "]";
  return os.str();
}

bool frees_modes(VariableSet variables) { return variables == VariableSet::co_design; }

}  // namespace

std::string to_string(VariableSet set) {
  switch (set) {
    case VariableSet::gait_only: return "gait_only";
    case VariableSet::co_design: return "co_design";
    case VariableSet::infinite: return "infinite";
  }
  return "gait_only";
}

VariableSet variable_set_from_string(const std::string& name) {
  if (name == "gait_only") return VariableSet::gait_only;
  if (name == "co_design") return VariableSet::co_design;
  if (name == "infinite") return VariableSet::infinite;
  throw std::invalid_argument("unknown variable set '" + name + "'");
}

std::string to_string(SwimmerFamily family) {
  switch (family) {
    case SwimmerFamily::three_link: return "three-link";
    case SwimmerFamily::serpenoid: return "serpenoid";
    case SwimmerFamily::two_mode: return "two-mode";
    case SwimmerFamily::three_mode: return "three-mode";
    case SwimmerFamily::infinite: return "infinite";
  }
  return "serpenoid";
}

SwimmerFamily swimmer_family_from_string(const std::string& name) {
  for (SwimmerFamily f : all_swimmer_families()) {
    if (to_string(f) == name) return f;
  }
  throw std::invalid_argument("unknown swimmer family '" + name + "'");
}

const std::vector<SwimmerFamily>& all_swimmer_families() {
  static const std::vector<SwimmerFamily> families = {SwimmerFamily::three_link, SwimmerFamily::serpenoid,
                                                      SwimmerFamily::two_mode, SwimmerFamily::three_mode,
                                                      SwimmerFamily::infinite};
  return families;
}

Eigen::VectorXd pack_parameters(const CurvatureModel& model, VariableSet variables) {
  const Eigen::VectorXd gait = row_major(model.gait().control_points());
  if (!frees_modes(variables)) return gait;
  if (!model.modes().has_control_points()) throw std::invalid_argument("co-design needs spline modes");
  const Eigen::VectorXd modes = row_major(model.modes().control_points());
  Eigen::VectorXd x(modes.size() + gait.size());
  x << modes, gait;
  return x;
}

CurvatureModel unpack_parameters(const CurvatureModel& like, VariableSet variables, const Eigen::VectorXd& x) {
  const Eigen::Index m = like.gait().count();
  const Eigen::Index q = like.gait().points();
  if (frees_modes(variables)) {
    const Eigen::Index p = like.modes().control_points().cols();
    if (x.size() != m * p + m * q) throw std::invalid_argument("parameter vector has the wrong size");
    return like.with_modes(from_row_major(x, 0, m, p)).with_gait(from_row_major(x, m * p, m, q));
  }
  if (x.size() != m * q) throw std::invalid_argument("parameter vector has the wrong size");
  return like.with_gait(from_row_major(x, 0, m, q));
}

CurvatureModel orthonormalize_modes(const CurvatureModel& model) {
  if (!model.modes().has_control_points()) return model;
  const Eigen::MatrixXd& rows = model.modes().control_points();
  const int m = static_cast<int>(rows.rows());
  const double scale = std::sqrt(static_cast<double>(rows.cols()));
  // rows = R^T Q with Q orthonormal rows: modified Gram-Schmidt.
  Eigen::MatrixXd q = rows;
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < i; ++j) {
      r(j, i) = q.row(j).dot(q.row(i));
      q.row(i) -= r(j, i) * q.row(j);
    }
    r(i, i) = q.row(i).norm();
    if (!(r(i, i) > 1e-12 * std::max(1.0, rows.norm()))) {
      throw NumericalError("optimizer", "shape modes became linearly dependent");
    }
    q.row(i) /= r(i, i);
  }
  // kappa = phi^T rows^T alpha = phi^T (scale Q)^T (R alpha / scale)
  const Eigen::MatrixXd gait = r * model.gait().control_points() / scale;
  return model.with_modes(scale * q).with_gait(gait);
}

CurvatureModel enforce_curvature_bound(const CurvatureModel& model, double kappa_max) {
  if (!(kappa_max > 0.0)) throw std::invalid_argument("kappa_max must be positive");
  const double scale = curvature_bound_scale(model, kappa_max);
  if (scale >= 1.0) return model;
  return model.with_gait(scale * model.gait().control_points());
}

double rms_curvature(const CurvatureModel& model) {
  const Eigen::MatrixXd kappa = curvature_grid(model);
  const Eigen::VectorXd w = model.grid().weights();
  return std::sqrt((w.transpose() * kappa.cwiseAbs2()).sum() / kappa.cols());
}

CurvatureModel normalize_amplitude(const CurvatureModel& model, double rms) {
  const double current = rms_curvature(model);
  if (!(current > 0.0)) return model;
  return model.with_gait(model.gait().control_points() * (rms / current));
}

Eigen::VectorXd tangent_gradient(const Eigen::VectorXd& x, const Eigen::VectorXd& g, int mode_block) {
  Eigen::VectorXd out = g;
  auto remove = [&](Eigen::Index start, Eigen::Index size) {
    const auto v = x.segment(start, size);
    const double n2 = v.squaredNorm();
    if (n2 > 0.0) out.segment(start, size) -= (v.dot(g.segment(start, size)) / n2) * v;
  };
  if (mode_block > 0) remove(0, mode_block);
  remove(mode_block, x.size() - mode_block);
  return out;
}

ObjectiveSample efficiency_objective(const CurvatureModel& model, const Regime& regime, VariableSet variables,
                                     const OptimizerSettings& settings, bool with_gradient) {
  EfficiencyOptions options;
  options.component = settings.component;
  options.trajectory = settings.trajectory;
  const EfficiencyReport report = efficiency(model, regime, options);

  ObjectiveSample out;
  out.value = report.efficiency;
  out.displacement = displacement_component(report.displacement, settings.component);
  out.cost = report.cost.cycle_cost;
  if (!with_gradient) return out;

  const Eigen::VectorXd x = pack_parameters(model, variables);
  out.gradient = Eigen::VectorXd::Zero(x.size());
  if (!(out.cost > 0.0)) return out;

  ApproximationOptions approx;
  approx.base = settings.trajectory.base;
  const GradientResult g = displacement_gradient(model, regime, settings.component, approx, false);
  Eigen::VectorXd moved(x.size());
  if (frees_modes(variables)) {
    moved << row_major(g.modes), row_major(g.gait);
  } else {
    moved = row_major(g.gait);
  }
  double sign = out.displacement > 0.0 ? 1.0 : (out.displacement < 0.0 ? -1.0 : 0.0);
  if (sign == 0.0) sign = displacement_component(Pose2d::from_coeffs(g.displacement), settings.component) >= 0.0 ? 1.0 : -1.0;

  const double h = settings.cost_step;
  Eigen::VectorXd cost_gradient(x.size());
  parallel_for(static_cast<int>(x.size()), settings.threads, [&](int p) {
    Eigen::VectorXd shifted = x;
    shifted(p) = x(p) + h;
    const double plus = cycle_cost(unpack_parameters(model, variables, shifted), regime, settings.trajectory.base).cycle_cost;
    shifted(p) = x(p) - h;
    const double minus = cycle_cost(unpack_parameters(model, variables, shifted), regime, settings.trajectory.base).cycle_cost;
    cost_gradient(p) = (plus - minus) / (2.0 * h);
  });

  out.gradient = (sign * moved - out.value * cost_gradient) / out.cost;
  return out;
}

AscentResult gradient_ascent(const std::function<ObjectiveSample(const Eigen::VectorXd&, bool)>& objective,
                             const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& project,
                             Eigen::VectorXd x0, const OptimizerSettings& settings) {
  if (settings.max_iters < 0) throw std::invalid_argument("max_iters must be non-negative");
  AscentResult result;
  result.x = project(x0);
  result.last = objective(result.x, true);
  auto check = [](const ObjectiveSample& s, const Eigen::VectorXd& x, int iteration) {
    if (!std::isfinite(s.value) || !s.gradient.allFinite()) {
      throw NumericalError("optimizer", "non-finite objective at iteration " + std::to_string(iteration) +
                                            ", iterate " + describe(x));
    }
  };
  check(result.last, result.x, 0);
  result.iterations.push_back(
      {0, result.last.value, result.last.displacement, result.last.cost, 0.0, result.last.gradient.norm()});

  // limited-memory pairs (s, y) for the ascent problem, newest last
  std::deque<std::pair<Eigen::VectorXd, Eigen::VectorXd>> pairs;
  auto direction = [&](const Eigen::VectorXd& g) -> Eigen::VectorXd {
    if (pairs.empty()) return g;
    const int k = static_cast<int>(pairs.size());
    std::vector<double> a(k), rho(k);
    Eigen::VectorXd q = g;
    for (int i = k - 1; i >= 0; --i) {
      rho[i] = 1.0 / pairs[i].second.dot(pairs[i].first);
      a[i] = rho[i] * pairs[i].first.dot(q);
      q -= a[i] * pairs[i].second;
    }
    const auto& newest = pairs.back();
    q *= newest.first.dot(newest.second) / newest.second.squaredNorm();
    for (int i = 0; i < k; ++i) {
      const double b = rho[i] * pairs[i].second.dot(q);
      q += (a[i] - b) * pairs[i].first;
    }
    return q;
  };

  const double tiny = std::numeric_limits<double>::min();
  double step = -1.0;
  int stalled = 0;
  result.stop_reason = "max_iters";
  for (int it = 1; it <= settings.max_iters; ++it) {
    const Eigen::VectorXd& g = result.last.gradient;
    const double gnorm = g.norm();
    if (!(gnorm > 0.0)) {
      result.stop_reason = "zero gradient";
      break;
    }
    bool accepted = false;
    double t = 0.0;
    Eigen::VectorXd trial;
    ObjectiveSample trial_value;
    auto search = [&](const Eigen::VectorXd& d, double slope, double first) {
      t = first;
      for (int b = 0; b <= settings.max_backtracks; ++b) {
        trial = project(result.x + t * d);
        trial_value = objective(trial, false);
        if (std::isfinite(trial_value.value) && trial_value.value >= result.last.value + settings.armijo * t * slope &&
            trial_value.value > result.last.value) {
          return true;
        }
        t *= settings.shrink;
      }
      return false;
    };
    auto gradient_start = [&] { return step > 0.0 ? step : settings.initial_step * std::max(result.x.norm(), 1e-12) / gnorm; };
    if (!pairs.empty()) {
      const Eigen::VectorXd d = direction(g);
      const double slope = g.dot(d);
      if (slope > 0.0) accepted = search(d, slope, 1.0);
      // a failed quasi-Newton step falls back to the plain gradient
      if (!accepted) {
        pairs.clear();
        step = -1.0;
      }
    }
    if (!accepted) accepted = search(g, gnorm * gnorm, gradient_start());
    if (!accepted) {
      result.stop_reason = "line search";
      break;
    }

    const double previous = result.last.value;
    const Eigen::VectorXd previous_x = result.x;
    const Eigen::VectorXd previous_g = g;
    result.x = trial;
    result.last = objective(result.x, true);
    check(result.last, result.x, it);
    result.iterations.push_back(
        {it, result.last.value, result.last.displacement, result.last.cost, t, result.last.gradient.norm()});

    if (settings.memory > 0) {
      Eigen::VectorXd s = result.x - previous_x;
      Eigen::VectorXd y = previous_g - result.last.gradient;  // gradient of -f
      if (s.dot(y) > 1e-12 * s.norm() * y.norm()) {
        pairs.emplace_back(std::move(s), std::move(y));
        if (static_cast<int>(pairs.size()) > settings.memory) pairs.pop_front();
      }
    }
    step = pairs.empty() ? t / settings.shrink : -1.0;

    const double improvement = (result.last.value - previous) / std::max(std::abs(previous), tiny);
    stalled = improvement < settings.rel_tol ? stalled + 1 : 0;
    if (stalled >= settings.patience) {
      result.stop_reason = "converged";
      break;
    }
  }
  return result;
}

OptimizationTrace optimize(const OptimizationProblem& problem) {
  const OptimizerSettings& settings = problem.settings;
  if (!(settings.kappa_max > 0.0)) throw std::invalid_argument("kappa_max must be positive");
  const VariableSet variables = problem.variables;
  if (variables == VariableSet::infinite && problem.initial.modes().kind() != ModeKind::unit_modes) {
    throw std::invalid_argument("the infinite variable set needs unit modes");
  }
  const CurvatureModel& like = problem.initial;
  const bool normalized = settings.rms_curvature > 0.0;
  auto project = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    CurvatureModel model = unpack_parameters(like, variables, x);
    if (frees_modes(variables)) model = orthonormalize_modes(model);
    if (normalized) model = normalize_amplitude(model, settings.rms_curvature);
    return pack_parameters(enforce_curvature_bound(model, settings.kappa_max), variables);
  };
  // With the amplitude pinned, ascend along the constraint surface only.
  const int mode_block = frees_modes(variables) ? static_cast<int>(like.modes().control_points().size()) : 0;
  auto objective = [&](const Eigen::VectorXd& x, bool with_gradient) {
    ObjectiveSample sample =
        efficiency_objective(unpack_parameters(like, variables, x), problem.regime, variables, settings, with_gradient);
    if (with_gradient && normalized) sample.gradient = tangent_gradient(x, sample.gradient, mode_block);
    return sample;
  };
  AscentResult ascent = gradient_ascent(objective, project, pack_parameters(like, variables), settings);

  OptimizationTrace trace;
  trace.iterations = std::move(ascent.iterations);
  trace.stop_reason = ascent.stop_reason;
  trace.final_model = unpack_parameters(like, variables, ascent.x);
  EfficiencyOptions options;
  options.component = settings.component;
  options.trajectory = settings.trajectory;
  options.with_approximation = true;
  trace.final_report = efficiency(trace.final_model, problem.regime, options);
  return trace;
}

Eigen::MatrixXd random_gait(int count, int points, std::uint64_t seed, double amplitude) {
  if (count < 1 || points < 3) throw std::invalid_argument("random gait needs count >= 1 and points >= 3");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coefficient(-amplitude, amplitude);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(count, points);
  for (int i = 0; i < count; ++i) {
    for (int harmonic = 1; harmonic <= 2; ++harmonic) {
      const double a = coefficient(rng);
      const double b = coefficient(rng);
      for (int q = 0; q < points; ++q) {
        const double phase = 2.0 * kPi * harmonic * q / points;
        out(i, q) += a * std::cos(phase) + b * std::sin(phase);
      }
    }
  }
  return out;
}

FamilySetup family_setup(SwimmerFamily family, const Grid& grid, int mode_points, int gait_points,
                         std::uint64_t seed, double amplitude) {
  auto spline_modes = [&](int count) {
    Eigen::MatrixXd rows(count, mode_points);
    for (int j = 0; j < mode_points; ++j) {
      const double s = static_cast<double>(j) / (mode_points - 1);
      rows(0, j) = std::sin(2.0 * kPi * s);
      rows(1, j) = std::cos(2.0 * kPi * s);
      if (count > 2) rows(2, j) = std::sin(4.0 * kPi * s);
    }
    return ModeSet::spline(rows);
  };
  switch (family) {
    case SwimmerFamily::three_link:
      return {CurvatureModel(ModeSet::three_link(), GaitTrajectory(random_gait(2, gait_points, seed, amplitude)), grid),
              VariableSet::gait_only};
    case SwimmerFamily::serpenoid:
      return {CurvatureModel(ModeSet::serpenoid(), GaitTrajectory(random_gait(2, gait_points, seed, amplitude)), grid),
              VariableSet::gait_only};
    case SwimmerFamily::two_mode:
      return {CurvatureModel(spline_modes(2), GaitTrajectory(random_gait(2, gait_points, seed, amplitude)), grid),
              VariableSet::co_design};
    case SwimmerFamily::three_mode:
      return {CurvatureModel(spline_modes(3), GaitTrajectory(random_gait(3, gait_points, seed, amplitude)), grid),
              VariableSet::co_design};
    case SwimmerFamily::infinite:
      return {CurvatureModel(ModeSet::unit_modes(mode_points), GaitTrajectory(random_gait(mode_points, gait_points, seed, amplitude)),
                             grid),
              VariableSet::infinite};
  }
  throw std::invalid_argument("unknown swimmer family");
}

SwimmerResult optimize_family(SwimmerFamily family, const Regime& regime, const CompareSettings& settings) {
  if (settings.restarts < 1) throw std::invalid_argument("restarts must be at least 1");
  std::vector<OptimizationTrace> traces(settings.restarts);
  parallel_for(settings.restarts, settings.threads, [&](int r) {
    const FamilySetup setup =
        family_setup(family, settings.grid, settings.mode_points, settings.gait_points, settings.seed + r,
                                             settings.amplitude);
    OptimizationProblem problem{regime, setup.variables, setup.model, settings.optimizer};
    traces[r] = optimize(problem);
  });
  SwimmerResult out;
  out.family = family;
  for (int r = 0; r < settings.restarts; ++r) {
    const double value = traces[r].final_report.efficiency;
    out.restart_efficiencies.push_back(value);
    if (r == 0 || value > out.efficiency) {
      out.efficiency = value;
      out.best_restart = r;
    }
  }
  out.best = std::move(traces[out.best_restart]);
  return out;
}

std::vector<SwimmerResult> compare_swimmers(const Regime& regime, const CompareSettings& settings) {
  std::vector<SwimmerResult> results;
  for (SwimmerFamily family : settings.families) results.push_back(optimize_family(family, regime, settings));
  double best = 0.0;
  for (const auto& r : results) best = std::max(best, r.efficiency);
  for (auto& r : results) r.normalized = best > 0.0 ? r.efficiency / best : 0.0;
  std::stable_sort(results.begin(), results.end(),
                   [](const SwimmerResult& a, const SwimmerResult& b) { return a.efficiency > b.efficiency; });
  return results;
}

}  // namespace geoswim
