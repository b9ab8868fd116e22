#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nc3/geometry.hpp"

namespace nc3 {

inline constexpr int kNumGaussPoints = 12;
inline constexpr int kLocalDim = 11;
inline constexpr int kNumGenerators = 12;

/// sqrt(3/5), the outer node of the 3-point Gauss rule.
inline const double kGaussOuter = std::sqrt(3.0 / 5.0);

/// Gauss values at the 12 reference points, in reference ordering.
using GaussValues = std::array<double, kNumGaussPoints>;

/// The 12 edge Gauss points of [-1,1]^2, counterclockwise from the bottom
/// edge: g1 = (-s,-1), g2 = (0,-1), ..., g12 = (-1,-s) with s = sqrt(3/5).
/// Points 3j, 3j+1, 3j+2 (0-based) lie on local edge j, which runs from
/// reference vertex j to vertex j+1.
const std::array<Vec2, kNumGaussPoints>& reference_gauss_points();

/// Reference vertices (-1,-1), (1,-1), (1,1), (-1,1).
const std::array<Vec2, 4>& reference_vertices();

/// Coefficients of a member of the local space against the fixed basis
/// [1, x, y, x^2, xy, y^2, x^3, x^2 y, x y^2, y^3, x^3 y - x y^3].
struct PolyCoeffs {
  std::array<double, kLocalDim> c{};

  static PolyCoeffs unit(int k) {
    PolyCoeffs p;
    p.c[k] = 1.0;
    return p;
  }
  PolyCoeffs& operator+=(const PolyCoeffs& o) {
    for (int k = 0; k < kLocalDim; ++k) c[k] += o.c[k];
    return *this;
  }
  friend PolyCoeffs operator*(double s, PolyCoeffs p) {
    for (auto& v : p.c) v *= s;
    return p;
  }
  friend bool operator==(const PolyCoeffs&, const PolyCoeffs&) = default;
};

double eval(const PolyCoeffs& p, Vec2 pt);
Vec2 eval_grad(const PolyCoeffs& p, Vec2 pt);

/// Values of the 11 basis monomials at a point.
std::array<double, kLocalDim> monomials(Vec2 pt);

/// Gradients of the 11 basis monomials at a point.
std::array<Vec2, kLocalDim> monomial_gradients(Vec2 pt);

/// Gauss values of p at the reference points.
GaussValues gauss_values(const PolyCoeffs& p);

/// Defect of the single linear relation satisfied by every member of the
/// local space:
///   [4(v2+v8) - 5(v1+v3+v7+v9)] - [4(v5+v11) - 5(v4+v6+v10+v12)]
/// (1-based indices).
double relation_residual(std::span<const double, kNumGaussPoints> v);

/// Default consistency tolerance used by coeffs_from_gauss_values.
double default_relation_tolerance(std::span<const double, kNumGaussPoints> v);

/// The unique member of the local space taking the given Gauss values.
/// Throws InconsistentValuesError when |relation_residual(v)| > tol.
PolyCoeffs coeffs_from_gauss_values(std::span<const double, kNumGaussPoints> v, double tol);
PolyCoeffs coeffs_from_gauss_values(std::span<const double, kNumGaussPoints> v);

/// Least-squares fit in the local space; no consistency requirement.
PolyCoeffs least_squares_fit(std::span<const double, kNumGaussPoints> v);

/// Local generator slots. Slot j (0..3) is the vertex function of reference
/// vertex j, slot 4+j the edge function weighted toward the first Gauss point
/// of local edge j (counterclockwise), slot 8+j the one weighted toward the
/// last.
enum GeneratorSlot : int {
  kVertexSlot0 = 0,
  kEdgePlusSlot0 = 4,
  kEdgeMinusSlot0 = 8,
};

/// Prescribed Gauss values of the generator in the given slot.
GaussValues generator_gauss_values(int slot);

/// The 12 local generators (rank 11) as coefficient vectors.
const std::array<PolyCoeffs, kNumGenerators>& local_generators();

/// Choice of the quartic enrichment added to P3.
enum class Enrichment { XCubedYMinusXYCubed, XCubedYPlusXYCubed, XCubedY, XYCubed };

std::string to_string(Enrichment e);

/// 12x11 matrix of basis values at the given points (rows) for P3 plus the
/// chosen enrichment.
Eigen::Matrix<double, kNumGaussPoints, kLocalDim> gauss_value_matrix(
    Enrichment e, std::span<const Vec2, kNumGaussPoints> points);

struct ConditioningEntry {
  Enrichment enrichment;
  int rank = 0;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double condition = 0.0;
};

struct UnisolvencyReport {
  std::vector<ConditioningEntry> entries;

  const ConditioningEntry& at(Enrichment e) const;
};

/// Singular-value summary of the Gauss-value matrix for one enrichment.
/// Numerical rank uses the threshold 12 * eps * sigma_max.
ConditioningEntry conditioning(Enrichment e, std::span<const Vec2, kNumGaussPoints> points);

/// Conditioning of all four enrichment variants on the reference points.
UnisolvencyReport unisolvency_report();

}  // namespace nc3
