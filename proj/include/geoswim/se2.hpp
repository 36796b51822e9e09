#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace geoswim {

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;

/// Planar rigid transform (x, y, theta). theta is kept unwrapped so that
/// net rotation accumulated over a gait keeps its winding.
template <typename Scalar>
struct Pose {
  Scalar x{0};
  Scalar y{0};
  Scalar theta{0};

  static Pose identity() { return Pose{}; }

  Vector3<Scalar> coeffs() const { return Vector3<Scalar>(x, y, theta); }
  static Pose from_coeffs(const Vector3<Scalar>& c) { return Pose{c(0), c(1), c(2)}; }

  Eigen::Matrix<Scalar, 2, 1> translation() const { return {x, y}; }
  Eigen::Matrix<Scalar, 2, 2> rotation() const {
    const Scalar c = std::cos(theta), s = std::sin(theta);
    Eigen::Matrix<Scalar, 2, 2> r;
    r << c, -s, s, c;
    return r;
  }

  /// 3x3 homogeneous matrix.
  Matrix3<Scalar> matrix() const {
    Matrix3<Scalar> m = Matrix3<Scalar>::Identity();
    m.template topLeftCorner<2, 2>() = rotation();
    m(0, 2) = x;
    m(1, 2) = y;
    return m;
  }
};

using Pose2d = Pose<double>;

/// Twists (vx, vy, omega) are plain Eigen 3-vectors.
using Twist2d = Vector3<double>;

namespace se2 {

namespace detail {

// sin(w)/w and (1 - cos(w))/w, written to avoid cancellation near w = 0.
template <typename Scalar>
inline void arc_coefficients(Scalar w, Scalar& a, Scalar& b) {
  using std::abs;
  if (abs(w) < Scalar(1e-9)) {
    a = Scalar(1) - w * w / Scalar(6);
    b = w / Scalar(2) - w * w * w / Scalar(24);
  } else {
    const Scalar half = std::sin(w / Scalar(2));
    a = std::sin(w) / w;
    b = Scalar(2) * half * half / w;
  }
}

}  // namespace detail

template <typename Scalar>
inline Pose<Scalar> compose(const Pose<Scalar>& a, const Pose<Scalar>& b) {
  const Scalar c = std::cos(a.theta), s = std::sin(a.theta);
  return Pose<Scalar>{a.x + c * b.x - s * b.y, a.y + s * b.x + c * b.y, a.theta + b.theta};
}

template <typename Scalar>
inline Pose<Scalar> inverse(const Pose<Scalar>& g) {
  const Scalar c = std::cos(g.theta), s = std::sin(g.theta);
  return Pose<Scalar>{-(c * g.x + s * g.y), s * g.x - c * g.y, -g.theta};
}

/// Constant-twist screw motion over unit time.
template <typename Derived>
inline Pose<typename Derived::Scalar> exp(const Eigen::MatrixBase<Derived>& xi) {
  using Scalar = typename Derived::Scalar;
  Scalar a, b;
  detail::arc_coefficients(Scalar(xi(2)), a, b);
  return Pose<Scalar>{a * xi(0) - b * xi(1), b * xi(0) + a * xi(1), xi(2)};
}

/// Principal-branch logarithm; throws std::domain_error when |theta| >= pi.
template <typename Scalar>
inline Vector3<Scalar> log(const Pose<Scalar>& g) {
  using std::abs;
  if (!(abs(g.theta) < Scalar(M_PI))) {
    throw std::domain_error("se2::log: |theta| >= pi has no principal logarithm");
  }
  Scalar a, b;
  detail::arc_coefficients(g.theta, a, b);
  const Scalar det = a * a + b * b;
  return Vector3<Scalar>((a * g.x + b * g.y) / det, (-b * g.x + a * g.y) / det, g.theta);
}

template <typename Scalar>
inline Matrix3<Scalar> adjoint(const Pose<Scalar>& g) {
  const Scalar c = std::cos(g.theta), s = std::sin(g.theta);
  Matrix3<Scalar> m;
  m << c, -s, g.y,
       s, c, -g.x,
       Scalar(0), Scalar(0), Scalar(1);
  return m;
}

/// Transpose of the adjoint; Ad^T mu Ad is then a congruence and stays symmetric.
template <typename Scalar>
inline Matrix3<Scalar> dual_adjoint(const Pose<Scalar>& g) {
  return adjoint(g).transpose();
}

/// Adjoint of the inverse without forming the inverse pose.
template <typename Scalar>
inline Matrix3<Scalar> adjoint_inverse(const Pose<Scalar>& g) {
  return adjoint(inverse(g));
}

template <typename DerivedA, typename DerivedB>
inline Vector3<typename DerivedA::Scalar> lie_bracket(const Eigen::MatrixBase<DerivedA>& a,
                                                      const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  return Vector3<Scalar>(b(2) * a(1) - a(2) * b(1), a(2) * b(0) - b(2) * a(0), Scalar(0));
}

/// se(2) element as a 3x3 matrix.
template <typename Derived>
inline Matrix3<typename Derived::Scalar> hat(const Eigen::MatrixBase<Derived>& xi) {
  using Scalar = typename Derived::Scalar;
  Matrix3<Scalar> m = Matrix3<Scalar>::Zero();
  m(0, 1) = -xi(2);
  m(1, 0) = xi(2);
  m(0, 2) = xi(0);
  m(1, 2) = xi(1);
  return m;
}

/// Pushes a body twist through a pose: world-frame velocity of the pose
/// coordinates (x', y', theta') for g' = g * hat(xi).
template <typename Scalar, typename Derived>
inline Vector3<Scalar> pose_rate(const Pose<Scalar>& g, const Eigen::MatrixBase<Derived>& xi) {
  const Scalar c = std::cos(g.theta), s = std::sin(g.theta);
  return Vector3<Scalar>(c * xi(0) - s * xi(1), s * xi(0) + c * xi(1), xi(2));
}

}  // namespace se2
}  // namespace geoswim
