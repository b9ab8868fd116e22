#pragma once

#include <vector>

#include "nc3/geometry.hpp"

namespace nc3 {

/// Gauss-Legendre rule on [-1, 1].
struct QuadRule1D {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Tensor-product rule on [-1, 1]^2.
struct QuadRule2D {
  std::vector<Vec2> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }
};

inline constexpr int kMaxGaussPoints = 16;

/// n-point Gauss-Legendre rule, exact for polynomials of degree 2n-1.
/// Rules with n <= 5 come from tables; larger ones from Newton iteration on
/// the Legendre polynomial. Throws InvalidArgumentError unless 1 <= n <= 16.
QuadRule1D gauss_1d(int n);

/// Tensor product of gauss_1d(nx) and gauss_1d(ny). Points are ordered with
/// the x index running fastest.
QuadRule2D tensor_rule(int nx, int ny);

}  // namespace nc3
