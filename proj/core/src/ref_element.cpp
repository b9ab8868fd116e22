#include "nc3/ref_element.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nc3/errors.hpp"

namespace nc3 {
namespace {

using ValueMatrix = Eigen::Matrix<double, kNumGaussPoints, kLocalDim>;

double enrichment_value(Enrichment e, double x, double y) {
  switch (e) {
    case Enrichment::XCubedYMinusXYCubed: return x * x * x * y - x * y * y * y;
    case Enrichment::XCubedYPlusXYCubed: return x * x * x * y + x * y * y * y;
    case Enrichment::XCubedY: return x * x * x * y;
    case Enrichment::XYCubed: return x * y * y * y;
  }
  return 0.0;
}

const Eigen::HouseholderQR<ValueMatrix>& reference_qr() {
  static const Eigen::HouseholderQR<ValueMatrix> qr(
      gauss_value_matrix(Enrichment::XCubedYMinusXYCubed, reference_gauss_points()));
  return qr;
}

}  // namespace

const std::array<Vec2, kNumGaussPoints>& reference_gauss_points() {
  static const std::array<Vec2, kNumGaussPoints> pts = [] {
    const double s = kGaussOuter;
    return std::array<Vec2, kNumGaussPoints>{{
        {-s, -1.0}, {0.0, -1.0}, {s, -1.0},
        {1.0, -s}, {1.0, 0.0}, {1.0, s},
        {s, 1.0}, {0.0, 1.0}, {-s, 1.0},
        {-1.0, s}, {-1.0, 0.0}, {-1.0, -s},
    }};
  }();
  return pts;
}

const std::array<Vec2, 4>& reference_vertices() {
  static const std::array<Vec2, 4> v{{{-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}}};
  return v;
}

std::array<double, kLocalDim> monomials(Vec2 pt) {
  const double x = pt.x;
  const double y = pt.y;
  return {1.0,       x,         y,         x * x,     x * y, y * y,
          x * x * x, x * x * y, x * y * y, y * y * y, x * x * x * y - x * y * y * y};
}

std::array<Vec2, kLocalDim> monomial_gradients(Vec2 pt) {
  const double x = pt.x;
  const double y = pt.y;
  return {{{0.0, 0.0},
           {1.0, 0.0},
           {0.0, 1.0},
           {2.0 * x, 0.0},
           {y, x},
           {0.0, 2.0 * y},
           {3.0 * x * x, 0.0},
           {2.0 * x * y, x * x},
           {y * y, 2.0 * x * y},
           {0.0, 3.0 * y * y},
           {3.0 * x * x * y - y * y * y, x * x * x - 3.0 * x * y * y}}};
}

double eval(const PolyCoeffs& p, Vec2 pt) {
  const auto m = monomials(pt);
  double s = 0.0;
  for (int k = 0; k < kLocalDim; ++k) s += p.c[k] * m[k];
  return s;
}

Vec2 eval_grad(const PolyCoeffs& p, Vec2 pt) {
  const auto g = monomial_gradients(pt);
  Vec2 s;
  for (int k = 0; k < kLocalDim; ++k) s = s + p.c[k] * g[k];
  return s;
}

GaussValues gauss_values(const PolyCoeffs& p) {
  GaussValues v{};
  const auto& pts = reference_gauss_points();
  for (int i = 0; i < kNumGaussPoints; ++i) v[i] = eval(p, pts[i]);
  return v;
}

double relation_residual(std::span<const double, kNumGaussPoints> v) {
  const double bottom_top = 4.0 * (v[1] + v[7]) - 5.0 * (v[0] + v[2] + v[6] + v[8]);
  const double right_left = 4.0 * (v[4] + v[10]) - 5.0 * (v[3] + v[5] + v[9] + v[11]);
  return bottom_top - right_left;
}

double default_relation_tolerance(std::span<const double, kNumGaussPoints> v) {
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  return 1e-8 * std::max(1.0, vmax);
}

PolyCoeffs least_squares_fit(std::span<const double, kNumGaussPoints> v) {
  const Eigen::Map<const Eigen::Matrix<double, kNumGaussPoints, 1>> rhs(v.data());
  const Eigen::Matrix<double, kLocalDim, 1> sol = reference_qr().solve(rhs);
  PolyCoeffs p;
  for (int k = 0; k < kLocalDim; ++k) p.c[k] = sol[k];
  return p;
}

PolyCoeffs coeffs_from_gauss_values(std::span<const double, kNumGaussPoints> v, double tol) {
  const double r = relation_residual(v);
  if (!(std::abs(r) <= tol)) {
    throw InconsistentValuesError(
        "Gauss values violate the local relation (residual " + std::to_string(r) + ")", r);
  }
  return least_squares_fit(v);
}

PolyCoeffs coeffs_from_gauss_values(std::span<const double, kNumGaussPoints> v) {
  return coeffs_from_gauss_values(v, default_relation_tolerance(v));
}

GaussValues generator_gauss_values(int slot) {
  GaussValues v{};
  if (slot < kEdgePlusSlot0) {
    const int j = slot;
    v[(3 * j + 11) % 12] = 1.0;
    v[3 * j] = 1.0;
  } else if (slot < kEdgeMinusSlot0) {
    const int j = slot - kEdgePlusSlot0;
    v[3 * j + 1] = 5.0;
    v[3 * j] = 4.0;
  } else {
    const int j = slot - kEdgeMinusSlot0;
    v[3 * j + 1] = 5.0;
    v[3 * j + 2] = 4.0;
  }
  return v;
}

const std::array<PolyCoeffs, kNumGenerators>& local_generators() {
  static const std::array<PolyCoeffs, kNumGenerators> gens = [] {
    std::array<PolyCoeffs, kNumGenerators> g{};
    for (int s = 0; s < kNumGenerators; ++s) {
      const GaussValues v = generator_gauss_values(s);
      g[s] = coeffs_from_gauss_values(v);
    }
    return g;
  }();
  return gens;
}

std::string to_string(Enrichment e) {
  switch (e) {
    case Enrichment::XCubedYMinusXYCubed: return "x^3y-xy^3";
    case Enrichment::XCubedYPlusXYCubed: return "x^3y+xy^3";
    case Enrichment::XCubedY: return "x^3y";
    case Enrichment::XYCubed: return "xy^3";
  }
  return "?";
}

Eigen::Matrix<double, kNumGaussPoints, kLocalDim> gauss_value_matrix(
    Enrichment e, std::span<const Vec2, kNumGaussPoints> points) {
  ValueMatrix m;
  for (int i = 0; i < kNumGaussPoints; ++i) {
    const auto mono = monomials(points[i]);
    for (int k = 0; k < kLocalDim - 1; ++k) m(i, k) = mono[k];
    m(i, kLocalDim - 1) = enrichment_value(e, points[i].x, points[i].y);
  }
  return m;
}

ConditioningEntry conditioning(Enrichment e, std::span<const Vec2, kNumGaussPoints> points) {
  const ValueMatrix m = gauss_value_matrix(e, points);
  const Eigen::JacobiSVD<ValueMatrix> svd(m);
  const auto& sv = svd.singularValues();
  ConditioningEntry out;
  out.enrichment = e;
  out.sigma_max = sv[0];
  out.sigma_min = sv[kLocalDim - 1];
  const double threshold = kNumGaussPoints * std::numeric_limits<double>::epsilon() * sv[0];
  out.rank = static_cast<int>((sv.array() > threshold).count());
  out.condition = out.sigma_min > 0.0 ? out.sigma_max / out.sigma_min
                                      : std::numeric_limits<double>::infinity();
  return out;
}

const ConditioningEntry& UnisolvencyReport::at(Enrichment e) const {
  for (const auto& entry : entries) {
    if (entry.enrichment == e) return entry;
  }
  throw InvalidArgumentError("enrichment variant missing from report");
}

UnisolvencyReport unisolvency_report() {
  UnisolvencyReport report;
  for (Enrichment e : {Enrichment::XCubedYMinusXYCubed, Enrichment::XCubedYPlusXYCubed,
                       Enrichment::XCubedY, Enrichment::XYCubed}) {
    report.entries.push_back(conditioning(e, reference_gauss_points()));
  }
  return report;
}

}  // namespace nc3
