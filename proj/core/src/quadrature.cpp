#include "nc3/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nc3/errors.hpp"

namespace nc3 {
namespace {

// Positive half of each small rule, largest node first; the negative half is
// mirrored and a zero node is present for odd n.
QuadRule1D tabulated(int n) {
  struct Pair {
    double node;
    double weight;
  };
  static const std::vector<Pair> table[6] = {
      {},
      {{0.0, 2.0}},
      {{0.57735026918962576, 1.0}},
      {{0.77459666924148338, 0.55555555555555556}, {0.0, 0.88888888888888889}},
      {{0.86113631159405258, 0.34785484513745386},
       {0.33998104358485626, 0.65214515486254614}},
      {{0.90617984593866399, 0.23692688505618909},
       {0.53846931010568309, 0.47862867049936647},
       {0.0, 0.56888888888888889}},
  };

  QuadRule1D rule;
  const auto& half = table[n];
  for (const auto& p : half) {
    rule.nodes.push_back(-p.node);
    rule.weights.push_back(p.weight);
  }
  for (auto it = half.rbegin(); it != half.rend(); ++it) {
    if (it->node == 0.0) continue;
    rule.nodes.push_back(it->node);
    rule.weights.push_back(it->weight);
  }
  return rule;
}

QuadRule1D newton_legendre(int n) {
  QuadRule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

QuadRule1D gauss_1d(int n) {
  if (n < 1 || n > kMaxGaussPoints) {
    throw InvalidArgumentError("gauss_1d: number of points must be in [1, 16], got " +
                               std::to_string(n));
  }
  return n <= 5 ? tabulated(n) : newton_legendre(n);
}

QuadRule2D tensor_rule(int nx, int ny) {
  const QuadRule1D rx = gauss_1d(nx);
  const QuadRule1D ry = gauss_1d(ny);
  QuadRule2D rule;
  rule.points.reserve(rx.size() * ry.size());
  rule.weights.reserve(rx.size() * ry.size());
  for (std::size_t j = 0; j < ry.size(); ++j) {
    for (std::size_t i = 0; i < rx.size(); ++i) {
      rule.points.push_back({rx.nodes[i], ry.nodes[j]});
      rule.weights.push_back(rx.weights[i] * ry.weights[j]);
    }
  }
  return rule;
}

}  // namespace nc3
