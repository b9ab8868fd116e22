#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "nc3/errors.hpp"
#include "nc3/quadrature.hpp"

namespace nc3 {
namespace {

double integrate(const QuadRule1D& r, int k) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
  return s;
}

double exact_monomial(int k) { return k % 2 == 1 ? 0.0 : 2.0 / (k + 1); }

TEST(Quadrature, ThreePointRuleMatchesEdgeGaussNodes) {
  const QuadRule1D r = gauss_1d(3);
  ASSERT_EQ(r.size(), 3u);
  const double s = std::sqrt(3.0 / 5.0);
  EXPECT_NEAR(r.nodes[0], -s, 1e-16);
  EXPECT_EQ(r.nodes[1], 0.0);
  EXPECT_NEAR(r.nodes[2], s, 1e-16);
  EXPECT_NEAR(r.weights[0], 5.0 / 9.0, 1e-16);
  EXPECT_NEAR(r.weights[1], 8.0 / 9.0, 1e-16);
  EXPECT_NEAR(r.weights[2], 5.0 / 9.0, 1e-16);
}

TEST(Quadrature, MidpointRule) {
  const QuadRule1D r = gauss_1d(1);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r.nodes[0], 0.0);
  EXPECT_EQ(r.weights[0], 2.0);
}

TEST(Quadrature, FivePointRuleIntegratesX8) {
  EXPECT_NEAR(integrate(gauss_1d(5), 8), 2.0 / 9.0, 1e-15);
}

TEST(Quadrature, RejectsOutOfRangeCounts) {
  EXPECT_THROW(gauss_1d(0), InvalidArgumentError);
  EXPECT_THROW(gauss_1d(17), InvalidArgumentError);
  EXPECT_THROW(tensor_rule(3, 0), InvalidArgumentError);
  EXPECT_NO_THROW(gauss_1d(16));
}

TEST(Quadrature, ExactnessWeightsAndSymmetryForAllSizes) {
  for (int n = 1; n <= kMaxGaussPoints; ++n) {
    const QuadRule1D r = gauss_1d(n);
    ASSERT_EQ(static_cast<int>(r.size()), n);
    EXPECT_NEAR(std::accumulate(r.weights.begin(), r.weights.end(), 0.0), 2.0, 1e-14) << n;
    for (int i = 0; i < n; ++i) {
      EXPECT_GT(r.weights[i], 0.0);
      EXPECT_NEAR(r.nodes[i], -r.nodes[n - 1 - i], 1e-15) << "n=" << n;
      EXPECT_NEAR(r.weights[i], r.weights[n - 1 - i], 1e-14) << "n=" << n;
    }
    if (n <= 8) {
      for (int k = 0; k <= 2 * n - 1; ++k) {
        EXPECT_NEAR(integrate(r, k), exact_monomial(k), 1e-13) << "n=" << n << " k=" << k;
      }
    }
  }
}

TEST(Quadrature, NewtonRulesAgreeWithTables) {
  // n = 6 from Newton iteration vs a literature table.
  const QuadRule1D r = gauss_1d(6);
  EXPECT_NEAR(r.nodes[5], 0.93246951420315203, 1e-15);
  EXPECT_NEAR(r.weights[5], 0.17132449237917035, 1e-15);
  EXPECT_NEAR(r.nodes[3], 0.23861918608319691, 1e-15);
}

TEST(Quadrature, TensorRuleSinglePoint) {
  const QuadRule2D r = tensor_rule(1, 1);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r.points[0], (Vec2{0.0, 0.0}));
  EXPECT_EQ(r.weights[0], 4.0);
}

TEST(Quadrature, TensorRuleX2Y2) {
  const QuadRule2D r = tensor_rule(3, 3);
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    s += r.weights[i] * r.points[i].x * r.points[i].x * r.points[i].y * r.points[i].y;
  }
  EXPECT_NEAR(s, 4.0 / 9.0, 1e-15);
}

TEST(Quadrature, TensorRuleWeightsSumAndExactness) {
  const QuadRule2D r55 = tensor_rule(5, 5);
  EXPECT_NEAR(std::accumulate(r55.weights.begin(), r55.weights.end(), 0.0), 4.0, 1e-14);

  const int nx = 2, ny = 4;
  const QuadRule2D r = tensor_rule(nx, ny);
  for (int p = 0; p <= 2 * nx - 1; ++p) {
    for (int q = 0; q <= 2 * ny - 1; ++q) {
      double s = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) {
        s += r.weights[i] * std::pow(r.points[i].x, p) * std::pow(r.points[i].y, q);
      }
      EXPECT_NEAR(s, exact_monomial(p) * exact_monomial(q), 1e-14) << p << "," << q;
    }
  }
}

}  // namespace
}  // namespace nc3
