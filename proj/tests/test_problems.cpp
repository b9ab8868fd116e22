#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nc3/errors.hpp"
#include "nc3/problems.hpp"

namespace nc3 {
namespace {

TEST(Problems, DirichletValueAtQuarterPoint) {
  const PresetProblem p = preset_problem("dirichlet-paper");
  EXPECT_NEAR(p.exact({0.25, 0.25}), 0.0126953125, 1e-16);
}

TEST(Problems, DirichletSolutionVanishesOnBoundary) {
  const PresetProblem p = preset_problem("dirichlet-paper");
  for (int k = 0; k <= 20; ++k) {
    const double t = k / 20.0;
    EXPECT_NEAR(p.exact({t, 0.0}), 0.0, 1e-15);
    EXPECT_NEAR(p.exact({t, 1.0}), 0.0, 1e-15);
    EXPECT_NEAR(p.exact({0.0, t}), 0.0, 1e-15);
    EXPECT_NEAR(p.exact({1.0, t}), 0.0, 1e-15);
  }
  EXPECT_EQ(p.problem.space_kind(), SpaceKind::Dirichlet0);
}

TEST(Problems, NeumannValueAtOrigin) {
  // cos(0)^2 (0 - 0 + 0) = 0; at (0.5, 0): cos(pi) cos(0) * 0.125 = -0.125.
  const PresetProblem p = preset_problem("neumann-paper");
  EXPECT_NEAR(p.exact({0.0, 0.0}), 0.0, 1e-16);
  EXPECT_NEAR(p.exact({0.5, 0.0}), -0.125, 1e-15);
  EXPECT_EQ(p.problem.space_kind(), SpaceKind::Full);
  EXPECT_EQ(p.problem.beta({0.3, 0.3}), 1.0);
}

TEST(Problems, SourcesMatchFiniteDifferences) {
  for (const std::string& name : preset_names()) {
    const PresetCheck c = validate_preset(preset_problem(name), 200, 1e-4, 42);
    EXPECT_EQ(c.samples, 200);
    EXPECT_LE(c.source_discrepancy, 1e-5) << name;
    EXPECT_LE(c.gradient_discrepancy, 1e-6) << name;
  }
}

TEST(Problems, NeumannDataIsNormalDerivative) {
  const PresetProblem p = preset_problem("neumann-paper");
  const auto& bc = std::get<NeumannBC>(p.problem.bc);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Vec2 normals[4] = {{0, -1}, {1, 0}, {0, 1}, {-1, 0}};
  for (int t = 0; t < 50; ++t) {
    const double s = u(rng);
    const Vec2 pts[4] = {{s, 0}, {1, s}, {s, 1}, {0, s}};
    for (int k = 0; k < 4; ++k) {
      const double h = 1e-6;
      const Vec2 a = pts[k] - h * normals[k];
      const Vec2 b = pts[k] + h * normals[k];
      const double fd = (p.exact(b) - p.exact(a)) / (2 * h);
      EXPECT_NEAR(bc.g(pts[k], normals[k]), fd, 1e-6);
      EXPECT_EQ(bc.gamma(pts[k]), 0.0);
    }
  }
}

TEST(Problems, UnknownNameIsConfigurationError) {
  EXPECT_THROW(preset_problem("nope"), ConfigurationError);
  EXPECT_EQ(preset_names(), (std::vector<std::string>{"dirichlet-paper", "neumann-paper"}));
}

}  // namespace
}  // namespace nc3
