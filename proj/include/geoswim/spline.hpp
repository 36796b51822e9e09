#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace geoswim {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Cardinal cubic-spline basis on uniform knots. Column j of `moments_`
/// holds the knot second derivatives of the spline interpolating e_j, so
/// any spline through data y is sum_j y_j * basis_j.
template <typename Scalar>
class CardinalSplineBasis {
 public:
  enum class Boundary { natural, periodic };

  CardinalSplineBasis() = default;

  CardinalSplineBasis(int knots, Boundary boundary) : knots_(knots), boundary_(boundary) {
    if (boundary == Boundary::natural && knots < 2) {
      throw std::invalid_argument("natural spline basis needs at least 2 knots");
    }
    if (boundary == Boundary::periodic && knots < 3) {
      throw std::invalid_argument("periodic spline basis needs at least 3 knots");
    }
    spacing_ = boundary == Boundary::natural ? Scalar(1) / Scalar(knots - 1) : Scalar(1) / Scalar(knots);
    build_moments();
  }

  int size() const { return knots_; }
  Boundary boundary() const { return boundary_; }
  Scalar spacing() const { return spacing_; }
  Scalar knot(int j) const { return spacing_ * Scalar(j); }
  const MatrixX<Scalar>& moments() const { return moments_; }

  /// Row of basis values (order 0), first or second derivatives at x.
  VectorX<Scalar> evaluate(Scalar x, int order = 0) const {
    VectorX<Scalar> out = VectorX<Scalar>::Zero(knots_);
    accumulate(x, order, out);
    return out;
  }

  /// Writes the basis row into `out` (size must equal size()).
  template <typename Derived>
  void accumulate(Scalar x, int order, Eigen::MatrixBase<Derived>& out) const {
    out.setZero();
    int k;
    Scalar u;
    locate(x, k, u);
    const int k1 = boundary_ == Boundary::periodic ? (k + 1) % knots_ : k + 1;
    const Scalar h = spacing_;
    const Scalar a = Scalar(1) - u;  // weight toward knot k
    const Scalar b = u;              // weight toward knot k1
    // S = a y_k + b y_k1 + h^2/6 [(a^3 - a) M_k + (b^3 - b) M_k1]
    Scalar cy_k, cy_k1, cm_k, cm_k1;
    switch (order) {
      case 0:
        cy_k = a;
        cy_k1 = b;
        cm_k = h * h / Scalar(6) * (a * a * a - a);
        cm_k1 = h * h / Scalar(6) * (b * b * b - b);
        break;
      case 1:
        cy_k = -Scalar(1) / h;
        cy_k1 = Scalar(1) / h;
        cm_k = -h / Scalar(6) * (Scalar(3) * a * a - Scalar(1));
        cm_k1 = h / Scalar(6) * (Scalar(3) * b * b - Scalar(1));
        break;
      case 2:
        cy_k = Scalar(0);
        cy_k1 = Scalar(0);
        cm_k = a;
        cm_k1 = b;
        break;
      default:
        throw std::invalid_argument("spline derivative order must be 0, 1 or 2");
    }
    out(k) += cy_k;
    out(k1) += cy_k1;
    out += cm_k * moments_.row(k).transpose() + cm_k1 * moments_.row(k1).transpose();
  }

 private:
  void locate(Scalar x, int& k, Scalar& u) const {
    if (boundary_ == Boundary::periodic) {
      x -= std::floor(x);
      Scalar pos = x / spacing_;
      k = static_cast<int>(std::floor(pos));
      if (k >= knots_) k = knots_ - 1;
      u = pos - Scalar(k);
    } else {
      if (x < Scalar(0)) x = Scalar(0);
      if (x > Scalar(1)) x = Scalar(1);
      Scalar pos = x / spacing_;
      k = static_cast<int>(std::floor(pos));
      if (k >= knots_ - 1) k = knots_ - 2;
      u = pos - Scalar(k);
    }
  }

  void build_moments() {
    const int n = knots_;
    const Scalar h2 = spacing_ * spacing_;
    moments_ = MatrixX<Scalar>::Zero(n, n);
    if (boundary_ == Boundary::natural) {
      if (n == 2) return;
      const int m = n - 2;
      MatrixX<Scalar> system = MatrixX<Scalar>::Zero(m, m);
      MatrixX<Scalar> rhs = MatrixX<Scalar>::Zero(m, n);
      for (int i = 0; i < m; ++i) {
        system(i, i) = Scalar(4);
        if (i > 0) system(i, i - 1) = Scalar(1);
        if (i + 1 < m) system(i, i + 1) = Scalar(1);
        rhs(i, i) += Scalar(6) / h2;
        rhs(i, i + 1) -= Scalar(12) / h2;
        rhs(i, i + 2) += Scalar(6) / h2;
      }
      moments_.middleRows(1, m) = system.partialPivLu().solve(rhs);
    } else {
      MatrixX<Scalar> system = MatrixX<Scalar>::Zero(n, n);
      MatrixX<Scalar> rhs = MatrixX<Scalar>::Zero(n, n);
      for (int i = 0; i < n; ++i) {
        const int prev = (i + n - 1) % n, next = (i + 1) % n;
        system(i, i) += Scalar(4);
        system(i, prev) += Scalar(1);
        system(i, next) += Scalar(1);
        rhs(i, prev) += Scalar(6) / h2;
        rhs(i, i) -= Scalar(12) / h2;
        rhs(i, next) += Scalar(6) / h2;
      }
      moments_ = system.partialPivLu().solve(rhs);
    }
  }

  int knots_{0};
  Boundary boundary_{Boundary::natural};
  Scalar spacing_{1};
  MatrixX<Scalar> moments_;
};

/// Natural cubic-spline cardinal basis on P uniform knots over [0, 1].
template <typename Scalar = double>
inline CardinalSplineBasis<Scalar> build_mode_basis(int points) {
  return CardinalSplineBasis<Scalar>(points, CardinalSplineBasis<Scalar>::Boundary::natural);
}

/// Periodic cubic-spline cardinal basis on Q uniform knots over [0, 1).
template <typename Scalar = double>
inline CardinalSplineBasis<Scalar> build_gait_basis(int points) {
  return CardinalSplineBasis<Scalar>(points, CardinalSplineBasis<Scalar>::Boundary::periodic);
}

}  // namespace geoswim
