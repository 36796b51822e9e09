#include "geoswim/backbone.hpp"

#include <cmath>
#include <stdexcept>

namespace geoswim {

namespace {

Pose2d segment(double width, double curvature) {
  return se2::exp(Twist2d(width, 0.0, width * curvature));
}

// Rotation twist about the point p, in the coordinates p is given in.
Twist2d rotation_twist(const Eigen::Vector2d& p) { return Twist2d(p(1), -p(0), 1.0); }

// Mean over u in [0, 1] of the position of exp(u (width, 0, width * curvature)),
// in the segment's start frame. d/dt exp(xi) exp(-xi) for a curvature rate is
// the rotation twist about this point.
Eigen::Vector2d arc_mean(double width, double curvature) {
  const double phi = width * curvature;
  if (std::abs(phi) < 1e-2) {
    const double p2 = phi * phi;
    return width * Eigen::Vector2d(0.5 - p2 / 24.0 + p2 * p2 / 720.0, phi * (1.0 / 6.0 - p2 / 120.0 + p2 * p2 / 5040.0));
  }
  const double half = std::sin(0.5 * phi);
  return width * Eigen::Vector2d(2.0 * half * half / (phi * phi), (phi - std::sin(phi)) / (phi * phi));
}

Eigen::Vector2d apply(const Pose2d& g, const Eigen::Vector2d& p) { return g.rotation() * p + g.translation(); }

// Linear velocity of point p under the spatial twist tau.
Eigen::Vector2d point_velocity(const Twist2d& tau, double px, double py) {
  return Eigen::Vector2d(tau(0) - tau(2) * py, tau(1) + tau(2) * px);
}

Pose2d center_of(const std::vector<Pose2d>& frames, const Eigen::VectorXd& w) {
  Pose2d c;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    c.x += w(i) * frames[i].x;
    c.y += w(i) * frames[i].y;
    c.theta += w(i) * frames[i].theta;
  }
  return c;
}

// Tail chain through the nodes, then a partial segment to s.
struct PointChain {
  BackboneState state;  // nodal state at the model's grid, tail base
  int last_node{0};
  double remainder{0.0};
  Pose2d frame;  // tail-anchored frame at s
  Eigen::Vector2d pivot{Eigen::Vector2d::Zero()};  // of the partial segment, tail coordinates
  double rate{0.0};                                // curvature rate of the partial segment
};

PointChain chain_to(const CurvatureModel& model, double s, double t) {
  if (s < 0.0 || s > 1.0) throw std::invalid_argument("arclength outside [0, 1]");
  const Grid& grid = model.grid();
  const ShapeSample shape = model.sample(t);
  PointChain out;
  out.state = backbone_state(shape.curvature, grid, BaseFrame::tail);
  const double h = grid.spacing();
  out.last_node = std::min(static_cast<int>(std::floor(s / h)), grid.segments);
  out.remainder = s - out.last_node * h;
  if (out.remainder < 1e-14) out.remainder = 0.0;
  out.frame = out.state.tail_frames[out.last_node];
  if (out.remainder > 0.0) {
    const double mid = 0.5 * (shape.curvature(out.last_node) + model.curvature(s, t));
    out.pivot = apply(out.frame, arc_mean(out.remainder, mid));
    out.rate = 0.5 * (shape.curvature_rate(out.last_node) + model.curvature_rate(s, t));
    out.frame = se2::compose(out.frame, segment(out.remainder, mid));
  }
  return out;
}

// Tail-anchored spatial twist of the frame at s.
Twist2d chain_twist(const PointChain& chain, const Eigen::VectorXd& curvature_rate) {
  Twist2d tau = base_twists(chain.state, curvature_rate).col(chain.last_node);
  if (chain.remainder > 0.0) tau += chain.remainder * chain.rate * rotation_twist(chain.pivot);
  return tau;
}

}  // namespace

BackboneState backbone_state(const Eigen::VectorXd& curvature, const Grid& grid, BaseFrame base) {
  const int n = grid.nodes();
  if (curvature.size() != n) throw std::invalid_argument("curvature sample does not match grid");
  BackboneState state;
  state.base_kind = base;
  state.weights = grid.weights();
  const double h = state.spacing = grid.spacing();
  state.tail_frames.resize(n);
  state.tail_frames[0] = Pose2d::identity();
  // headings advance by the segment rotations, so each segment costs one sin/cos pair
  Eigen::Matrix2Xd tail_headings(2, n);
  Eigen::Matrix2Xd local_pivots(2, n - 1);
  tail_headings.col(0) = Eigen::Vector2d(1.0, 0.0);
  for (int i = 0; i + 1 < n; ++i) {
    const double phi = h * 0.5 * (curvature(i) + curvature(i + 1));
    const double cp = std::cos(phi), sp = std::sin(phi);
    Eigen::Vector2d step, mean;
    if (std::abs(phi) < 1e-2) {
      const double p2 = phi * phi;
      step << 1.0 - p2 / 6.0 + p2 * p2 / 120.0, phi * (0.5 - p2 / 24.0 + p2 * p2 / 720.0);
      mean << 0.5 - p2 / 24.0 + p2 * p2 / 720.0, phi * (1.0 / 6.0 - p2 / 120.0 + p2 * p2 / 5040.0);
    } else {
      step << sp / phi, (1.0 - cp) / phi;
      mean << (1.0 - cp) / (phi * phi), (phi - sp) / (phi * phi);
    }
    const double c = tail_headings(0, i), s = tail_headings(1, i);
    const Pose2d& g = state.tail_frames[i];
    const Eigen::Vector2d p(g.x, g.y);
    const Eigen::Vector2d q = p + h * Eigen::Vector2d(c * step(0) - s * step(1), s * step(0) + c * step(1));
    state.tail_frames[i + 1] = Pose2d{q(0), q(1), g.theta + phi};
    tail_headings.col(i + 1) = Eigen::Vector2d(c * cp - s * sp, s * cp + c * sp);
    local_pivots.col(i) = p + h * Eigen::Vector2d(c * mean(0) - s * mean(1), s * mean(0) + c * mean(1));
  }
  state.base = base == BaseFrame::geometric_center ? center_of(state.tail_frames, state.weights) : Pose2d::identity();
  // base^{-1}: rotate by -theta_b about the base origin
  const double cb = std::cos(state.base.theta), sb = std::sin(state.base.theta);
  const Eigen::Vector2d tb = state.base.translation();
  Eigen::Matrix2d rt;
  rt << cb, sb, -sb, cb;
  state.frames.resize(n);
  state.headings = rt * tail_headings;
  for (int i = 0; i < n; ++i) {
    const Pose2d& g = state.tail_frames[i];
    const Eigen::Vector2d q = rt * (g.translation() - tb);
    state.frames[i] = Pose2d{q(0), q(1), g.theta - state.base.theta};
  }
  state.pivots = rt * (local_pivots.colwise() - tb);
  return state;
}

Eigen::Matrix3Xd base_twists(const BackboneState& state, const Eigen::VectorXd& curvature_rate) {
  const int n = state.nodes();
  if (curvature_rate.size() != n) throw std::invalid_argument("curvature rate does not match grid");
  const double h = state.spacing;
  Eigen::Matrix3Xd sigma(3, n);
  sigma.col(0).setZero();
  for (int i = 1; i < n; ++i) {
    const double rate = 0.5 * (curvature_rate(i - 1) + curvature_rate(i));
    sigma.col(i) = sigma.col(i - 1) + h * rate * rotation_twist(Eigen::Vector2d(state.pivots.col(i - 1)));
  }
  if (state.base_kind == BaseFrame::geometric_center) {
    Twist2d relative = Twist2d::Zero();
    for (int i = 0; i < n; ++i) {
      const Twist2d tau = sigma.col(i);
      relative.head<2>() += state.weights(i) * point_velocity(tau, state.frames[i].x, state.frames[i].y);
      relative(2) += state.weights(i) * tau(2);
    }
    sigma.colwise() -= relative;
  }
  return sigma;
}

Twist2d base_velocity_from_tail(const BackboneState& state, const Eigen::VectorXd& curvature_rate) {
  if (state.base_kind == BaseFrame::tail) return Twist2d::Zero();
  BackboneState tail = state;
  tail.base_kind = BaseFrame::tail;
  const Eigen::Matrix3Xd chain = base_twists(tail, curvature_rate);
  Twist2d relative = Twist2d::Zero();
  for (int i = 0; i < state.nodes(); ++i) {
    const Twist2d tau = chain.col(i);
    relative.head<2>() += state.weights(i) * point_velocity(tau, state.frames[i].x, state.frames[i].y);
    relative(2) += state.weights(i) * tau(2);
  }
  return relative;
}

Eigen::Matrix3Xd group_velocities(const BackboneState& state, const Eigen::VectorXd& curvature_rate) {
  Eigen::Matrix3Xd sigma = base_twists(state, curvature_rate);
  for (int i = 0; i < state.nodes(); ++i) sigma.col(i) = state.adjoint_inverse(i) * sigma.col(i);
  return sigma;
}

Eigen::Matrix3Xd frame_body_velocities(const BackboneState& state, const Eigen::VectorXd& curvature_rate,
                                       const Twist2d& xi_base) {
  Eigen::Matrix3Xd sigma = base_twists(state, curvature_rate);
  for (int i = 0; i < state.nodes(); ++i) {
    sigma.col(i) = state.adjoint_inverse(i) * (xi_base + sigma.col(i));
  }
  return sigma;
}

Twist2d backbone_flow(const CurvatureModel& model, double s, double t) {
  return Twist2d(1.0, 0.0, model.curvature(s, t));
}

Pose2d backbone_transform(const CurvatureModel& model, double s, double t) { return chain_to(model, s, t).frame; }

Twist2d group_velocity(const CurvatureModel& model, double s, double t) {
  const PointChain chain = chain_to(model, s, t);
  return se2::adjoint_inverse(chain.frame) * chain_twist(chain, model.sample(t).curvature_rate);
}

Pose2d geometric_center_frame(const CurvatureModel& model, double t) {
  return backbone_state(model.sample(t).curvature, model.grid(), BaseFrame::geometric_center).base;
}

Twist2d frame_body_velocity(const CurvatureModel& model, double s, double t, const Twist2d& xi_base) {
  const PointChain chain = chain_to(model, s, t);
  const ShapeSample shape = model.sample(t);
  const BackboneState centered = backbone_state(shape.curvature, model.grid(), BaseFrame::geometric_center);
  const Twist2d tau = chain_twist(chain, shape.curvature_rate);
  const Pose2d to_base = se2::inverse(centered.base);
  const Twist2d sigma = se2::adjoint(to_base) * tau - base_velocity_from_tail(centered, shape.curvature_rate);
  const Pose2d frame = se2::compose(to_base, chain.frame);
  return se2::adjoint_inverse(frame) * (xi_base + sigma);
}

}  // namespace geoswim
