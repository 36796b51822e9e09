#include <gtest/gtest.h>

#include <cmath>

#include "geoswim/spline.hpp"

using namespace geoswim;
using Basis = CardinalSplineBasis<double>;

TEST(Spline, CardinalAtKnots) {
  for (auto boundary : {Basis::Boundary::natural, Basis::Boundary::periodic}) {
    const Basis basis(7, boundary);
    for (int j = 0; j < 7; ++j) {
      const Eigen::VectorXd row = basis.evaluate(basis.knot(j));
      for (int i = 0; i < 7; ++i) EXPECT_NEAR(row(i), i == j ? 1.0 : 0.0, 1e-14);
    }
  }
}

TEST(Spline, PartitionOfUnity) {
  const Basis natural(9, Basis::Boundary::natural);
  const Basis periodic(9, Basis::Boundary::periodic);
  for (double x = 0.0; x <= 1.0; x += 0.0137) {
    EXPECT_NEAR(natural.evaluate(x).sum(), 1.0, 1e-13);
    EXPECT_NEAR(periodic.evaluate(x).sum(), 1.0, 1e-13);
    EXPECT_NEAR(natural.evaluate(x, 1).sum(), 0.0, 1e-11);
    EXPECT_NEAR(periodic.evaluate(x, 2).sum(), 0.0, 1e-9);
  }
}

TEST(Spline, NaturalReproducesLines) {
  const Basis basis(6, Basis::Boundary::natural);
  Eigen::VectorXd y(6);
  for (int j = 0; j < 6; ++j) y(j) = 2.0 - 3.0 * basis.knot(j);
  for (double x = 0.0; x <= 1.0; x += 0.05) {
    EXPECT_NEAR(basis.evaluate(x).dot(y), 2.0 - 3.0 * x, 1e-13);
    EXPECT_NEAR(basis.evaluate(x, 1).dot(y), -3.0, 1e-11);
  }
}

TEST(Spline, NaturalEndsHaveZeroSecondDerivative) {
  const Basis basis(8, Basis::Boundary::natural);
  for (int j = 0; j < 8; ++j) {
    EXPECT_NEAR(basis.evaluate(0.0, 2)(j), 0.0, 1e-10);
    EXPECT_NEAR(basis.evaluate(1.0, 2)(j), 0.0, 1e-10);
  }
}

TEST(Spline, PeriodicWrapsSmoothly) {
  const Basis basis(10, Basis::Boundary::periodic);
  for (int order = 0; order <= 2; ++order) {
    const Eigen::VectorXd start = basis.evaluate(0.0, order);
    const Eigen::VectorXd end = basis.evaluate(1.0 - 1e-12, order);
    // the offset times the next derivative bounds the gap
    EXPECT_LT((start - end).norm(), 1e-6) << "order " << order;
    EXPECT_LT((basis.evaluate(0.3, order) - basis.evaluate(1.3, order)).norm(), 1e-12);
  }
}

TEST(Spline, DerivativesMatchDifferences) {
  const Basis basis(10, Basis::Boundary::periodic);
  const double h = 1e-6;
  for (double x : {0.05, 0.31, 0.77}) {
    const Eigen::VectorXd d1 = (basis.evaluate(x + h) - basis.evaluate(x - h)) / (2.0 * h);
    const Eigen::VectorXd d2 = (basis.evaluate(x + h, 1) - basis.evaluate(x - h, 1)) / (2.0 * h);
    EXPECT_LT((basis.evaluate(x, 1) - d1).norm(), 1e-6);
    EXPECT_LT((basis.evaluate(x, 2) - d2).norm(), 1e-4);
  }
}

TEST(Spline, PeriodicInterpolatesSmoothSignalAccurately) {
  const int q = 32;
  const Basis basis(q, Basis::Boundary::periodic);
  Eigen::VectorXd y(q);
  for (int j = 0; j < q; ++j) y(j) = std::sin(2.0 * M_PI * basis.knot(j));
  double worst = 0.0;
  for (double x = 0.0; x < 1.0; x += 0.01) worst = std::max(worst, std::abs(basis.evaluate(x).dot(y) - std::sin(2.0 * M_PI * x)));
  EXPECT_LT(worst, 1e-4);
}

TEST(Spline, RejectsTooFewKnots) {
  EXPECT_THROW(Basis(1, Basis::Boundary::natural), std::invalid_argument);
  EXPECT_THROW(Basis(2, Basis::Boundary::periodic), std::invalid_argument);
  EXPECT_NO_THROW(Basis(2, Basis::Boundary::natural));
  EXPECT_NO_THROW(Basis(3, Basis::Boundary::periodic));
}
