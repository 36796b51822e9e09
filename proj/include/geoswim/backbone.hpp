#pragma once

#include <vector>

#include <Eigen/Dense>

#include "geoswim/se2.hpp"
#include "geoswim/shape.hpp"

namespace geoswim {

enum class BaseFrame { tail, geometric_center };

/// Backbone frames at the arclength nodes for one shape.
struct BackboneState {
  BaseFrame base_kind{BaseFrame::geometric_center};
  std::vector<Pose2d> tail_frames;  // tail-anchored chain, tail_frames[0] = identity
  Pose2d base;                      // tail -> base transform
  std::vector<Pose2d> frames;       // base^{-1} * tail_frames[i]
  Eigen::VectorXd weights;          // trapezoid weights of the nodes
  Eigen::Matrix2Xd pivots;          // per segment, in base coordinates: arc-mean point of the segment
  Eigen::Matrix2Xd headings;        // (cos, sin) of frames[i].theta
  double spacing{0.0};

  int nodes() const { return static_cast<int>(frames.size()); }

  /// Ad of frames[i]^{-1}, from the cached heading.
  Eigen::Matrix3d adjoint_inverse(int i) const {
    const double c = headings(0, i), s = headings(1, i), x = frames[i].x, y = frames[i].y;
    Eigen::Matrix3d ad;
    ad << c, s, s * x - c * y, -s, c, s * y + c * x, 0.0, 0.0, 1.0;
    return ad;
  }
};

/// Frames for nodal curvature values. Each segment is the exact exponential of
/// (h, 0, h * kappa_mid), with kappa_mid the mean of the two end nodes.
BackboneState backbone_state(const Eigen::VectorXd& curvature, const Grid& grid,
                             BaseFrame base = BaseFrame::geometric_center);

/// Base-frame spatial twists sigma_i such that the group velocity of node i
/// (relative to the base, expressed in frame i) is Ad_{g_i^{-1}} sigma_i.
/// This is the exact time derivative of the segment chain: a segment whose
/// curvature changes at rate c_t sweeps the rotation twist about its pivot
/// (the mean of the arc's points) scaled by h * c_t. The geometric-center base
/// subtracts its own velocity relative to the tail.
Eigen::Matrix3Xd base_twists(const BackboneState& state, const Eigen::VectorXd& curvature_rate);

/// Re-based group velocities g_i^{-1} dg_i/dt per node.
Eigen::Matrix3Xd group_velocities(const BackboneState& state, const Eigen::VectorXd& curvature_rate);

/// Velocity of the base relative to the tail, in the base frame (zero for a tail base).
Twist2d base_velocity_from_tail(const BackboneState& state, const Eigen::VectorXd& curvature_rate);

/// Body velocities of every node frame for a given base body velocity.
Eigen::Matrix3Xd frame_body_velocities(const BackboneState& state, const Eigen::VectorXd& curvature_rate,
                                       const Twist2d& xi_base);

// Point queries on a continuous model. s need not lie on a node: the last
// partial segment uses the same midpoint rule over its reduced width.

/// (L, 0, kappa(s,t)) with L = 1.
Twist2d backbone_flow(const CurvatureModel& model, double s, double t);
/// Tail-anchored frame g(s, t).
Pose2d backbone_transform(const CurvatureModel& model, double s, double t);
/// Tail-anchored group velocity g(s)^{-1} dg(s)/dt.
Twist2d group_velocity(const CurvatureModel& model, double s, double t);
/// Tail -> geometric-center transform.
Pose2d geometric_center_frame(const CurvatureModel& model, double t);
/// Body velocity of the frame at s, re-based at the geometric center.
Twist2d frame_body_velocity(const CurvatureModel& model, double s, double t, const Twist2d& xi_base);

}  // namespace geoswim
