#include "nc3/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "nc3/assembly.hpp"
#include "nc3/fe_space.hpp"
#include "nc3/mesh.hpp"
#include "nc3/quadrature.hpp"

namespace nc3 {
namespace {

using ValueMatrix = Eigen::Matrix<double, kNumGaussPoints, kLocalDim>;

// Coefficients of the single relation among the 12 Gauss values.
Eigen::Matrix<double, kNumGaussPoints, 1> relation_vector() {
  Eigen::Matrix<double, kNumGaussPoints, 1> c;
  c << -5, 4, -5, 5, -4, 5, -5, 4, -5, 5, -4, 5;
  return c;
}

CheckResult at_most(std::string name, double measured, double threshold, std::string detail = {}) {
  return {std::move(name), measured, threshold, measured <= threshold, std::move(detail)};
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

std::array<Vec2, kNumGaussPoints> point_set(bool uncorrected) {
  auto pts = reference_gauss_points();
  if (uncorrected) pts[11] = {-1.0, kGaussOuter};
  return pts;
}

CheckResult check_point_set(std::span<const Vec2, kNumGaussPoints> pts) {
  // Every true edge Gauss point must appear in the set.
  double worst = 0.0;
  for (const Vec2& target : reference_gauss_points()) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec2& p : pts) best = std::min(best, norm(p - target));
    worst = std::max(worst, best);
  }
  return at_most("gauss-point-set", worst, 1e-15, "max distance to the edge Gauss nodes");
}

CheckResult check_cubic_1d(int samples, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const double s = kGaussOuter;
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double c0 = coef(rng), c1 = coef(rng), c2 = coef(rng), c3 = coef(rng);
    const auto p = [&](double t) { return c0 + t * (c1 + t * (c2 + t * c3)); };
    const double r = 3.0 * p(-1.0) + 3.0 * p(1.0) - 5.0 * p(s) - 5.0 * p(-s) + 4.0 * p(0.0);
    worst = std::max(worst, std::abs(r));
  }
  return at_most("cubic-1d-relation", worst, 1e-13,
                 std::to_string(samples) + " random cubics on [-1,1]");
}

Eigen::Matrix<double, kLocalDim, 1> random_coeffs(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  Eigen::Matrix<double, kLocalDim, 1> c;
  for (int k = 0; k < kLocalDim; ++k) c[k] = coef(rng);
  return c;
}

void check_element_under_test(const VerifyOptions& opt, VerifyReport& report,
                              std::mt19937_64& rng) {
  const auto pts = point_set(opt.uncorrected_g12);
  report.checks.push_back(check_point_set(pts));

  const ValueMatrix a = gauss_value_matrix(opt.enrichment, pts);
  const Eigen::ColPivHouseholderQR<ValueMatrix> qr(a);

  double relation_worst = 0.0;
  double roundtrip_worst = 0.0;
  for (int k = 0; k < opt.random_samples; ++k) {
    const auto c = random_coeffs(rng);
    const Eigen::Matrix<double, kNumGaussPoints, 1> v = a * c;
    const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
    relation_worst = std::max(relation_worst, std::abs(relation_residual(std::span<const double, 12>(
                                                  v.data(), kNumGaussPoints))) /
                                                  scale);
    const Eigen::Matrix<double, kLocalDim, 1> back = qr.solve(v);
    roundtrip_worst = std::max(roundtrip_worst, (back - c).cwiseAbs().maxCoeff() / scale);
  }
  report.checks.push_back(at_most("relation-identity", relation_worst, 1e-12,
                                  std::to_string(opt.random_samples) + " random members"));
  report.checks.push_back(at_most("round-trip", roundtrip_worst, 1e-11,
                                  "coefficients recovered from Gauss values"));

  const ConditioningEntry cond = conditioning(opt.enrichment, pts);
  report.checks.push_back({"unisolvency-rank", static_cast<double>(cond.rank), kLocalDim,
                           cond.rank == kLocalDim,
                           "enrichment " + to_string(opt.enrichment) +
                               ", sigma_min = " + format_double(cond.sigma_min) +
                               ", condition = " + format_double(cond.condition)});
  const double left_null = (relation_vector().transpose() * a).cwiseAbs().maxCoeff();
  report.checks.push_back(at_most("unisolvency-relation", left_null, 1e-12,
                                  "relation annihilates the Gauss-value matrix"));

  if (cond.rank < kLocalDim || cond.condition > 1e8) {
    report.warnings.push_back("enrichment " + to_string(opt.enrichment) +
                              " gives a nearly singular Gauss-value matrix (rank " +
                              std::to_string(cond.rank) + ", condition " +
                              format_double(cond.condition) + ")");
  }
}

void check_reference_element(const VerifyOptions& opt, VerifyReport& report,
                             std::mt19937_64& rng) {
  // x^2 + y^2 - 8/5 vanishes at the eight outer Gauss points.
  const auto& pts = reference_gauss_points();
  double phi1 = 0.0;
  for (int i = 0; i < kNumGaussPoints; ++i) {
    if (i % 3 == 1) continue;
    phi1 = std::max(phi1, std::abs(pts[i].x * pts[i].x + pts[i].y * pts[i].y - 8.0 / 5.0));
  }
  report.checks.push_back(at_most("phi1-vanishing", phi1, 1e-15, "x^2+y^2-8/5 at outer points"));

  const auto& gens = local_generators();
  double prescription = 0.0;
  Eigen::Matrix<double, kNumGenerators, kLocalDim> gmat;
  for (int s = 0; s < kNumGenerators; ++s) {
    const GaussValues want = generator_gauss_values(s);
    const GaussValues got = gauss_values(gens[s]);
    for (int i = 0; i < kNumGaussPoints; ++i) {
      prescription = std::max(prescription, std::abs(want[i] - got[i]));
    }
    for (int k = 0; k < kLocalDim; ++k) gmat(s, k) = gens[s].c[k];
  }
  report.checks.push_back(at_most("generator-prescription", prescription, 1e-12,
                                  "Gauss values of the 12 local generators"));
  const Eigen::JacobiSVD<decltype(gmat)> gsvd(gmat);
  const auto& gsv = gsvd.singularValues();
  const int grank = static_cast<int>(
      (gsv.array() > kNumGenerators * std::numeric_limits<double>::epsilon() * gsv[0]).count());
  report.checks.push_back({"generator-rank", static_cast<double>(grank), kLocalDim,
                           grank == kLocalDim, "rank of the 12 generator coefficient vectors"});

  // Traces are cubic: fit through 4 samples, predict a fifth.
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const std::array<double, 4> ts{-1.0, -0.4, 0.3, 1.0};
  const double t_probe = 0.65;
  const auto& rv = reference_vertices();
  double trace_worst = 0.0;
  const int trace_samples = std::max(1, opt.random_samples / 100);
  for (int k = 0; k < trace_samples; ++k) {
    PolyCoeffs p;
    for (auto& c : p.c) c = coef(rng);
    for (int j = 0; j < 4; ++j) {
      const Vec2 a = rv[j];
      const Vec2 b = rv[(j + 1) % 4];
      const auto at = [&](double t) { return eval(p, a + (0.5 * (t + 1.0)) * (b - a)); };
      double predicted = 0.0;
      for (int m = 0; m < 4; ++m) {
        double l = 1.0;
        for (int q = 0; q < 4; ++q) {
          if (q != m) l *= (t_probe - ts[q]) / (ts[m] - ts[q]);
        }
        predicted += l * at(ts[m]);
      }
      trace_worst = std::max(trace_worst, std::abs(predicted - at(t_probe)));
    }
  }
  report.checks.push_back(at_most("edge-trace-cubic", trace_worst, 1e-12,
                                  "cubic fit of edge traces reproduces a fifth sample"));

  // Members vanishing at an edge's Gauss points are orthogonal to quadratics
  // on that edge.
  const QuadRule1D rule = gauss_1d(5);
  double orth_worst = 0.0;
  for (int j = 0; j < 4; ++j) {
    std::vector<int> free_slots;
    for (int s = 0; s < kNumGenerators; ++s) {
      const GaussValues v = generator_gauss_values(s);
      if (v[3 * j] == 0.0 && v[3 * j + 1] == 0.0 && v[3 * j + 2] == 0.0) free_slots.push_back(s);
    }
    const Vec2 a = rv[j];
    const Vec2 b = rv[(j + 1) % 4];
    for (int k = 0; k < trace_samples; ++k) {
      PolyCoeffs p;
      for (int s : free_slots) p += coef(rng) * gens[s];
      double m[3] = {0.0, 0.0, 0.0};
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const double t = rule.nodes[q];
        const double w = rule.weights[q] * eval(p, a + (0.5 * (t + 1.0)) * (b - a));
        m[0] += w;
        m[1] += w * t;
        m[2] += w * t * t;
      }
      for (double v : m) orth_worst = std::max(orth_worst, std::abs(v));
    }
  }
  report.checks.push_back(at_most("patch-orthogonality-local", orth_worst, 1e-12,
                                  "edge moments against 1, t, t^2"));
}

void check_global_space(const VerifyOptions& opt, VerifyReport& report) {
  const Mesh mesh = unit_square_grid(opt.patch_mesh_n);
  double jump_worst = 0.0;
  double continuity_worst = 0.0;
  for (SpaceKind kind : {SpaceKind::Full, SpaceKind::Dirichlet0}) {
    const DofMap dofs = build_dofmap(mesh, kind);
    for (int d = 0; d < dofs.total; ++d) {
      FeFunction w(dofs);
      w.coefficients()[d] = 1.0;
      const auto polys = element_polynomials(mesh, w);
      jump_worst = std::max(jump_worst, jump_moments(mesh, polys));
      for (int e = 0; e < mesh.num_edges(); ++e) {
        const auto& edge = mesh.edge(e);
        if (edge.boundary) continue;
        const auto g = edge_gauss_points(mesh, e);
        const AffineMap f0 = affine_map(mesh, edge.elements[0]);
        const AffineMap f1 = affine_map(mesh, edge.elements[1]);
        for (Vec2 x : {g.plus, g.mid, g.minus}) {
          const double diff = eval(polys[edge.elements[0]], f0.inverse(x)) -
                              eval(polys[edge.elements[1]], f1.inverse(x));
          continuity_worst = std::max(continuity_worst, std::abs(diff));
        }
      }
    }
  }
  const std::string mesh_desc = std::to_string(opt.patch_mesh_n) + "x" +
                                std::to_string(opt.patch_mesh_n) + " mesh, every basis function";
  report.checks.push_back(at_most("patch-test-global", jump_worst, 1e-11, mesh_desc));
  report.checks.push_back(at_most("gauss-continuity-global", continuity_worst, 1e-12, mesh_desc));
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* VerifyReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

VerifyReport verify_element(const VerifyOptions& options) {
  VerifyReport report;
  std::mt19937_64 rng(options.seed);
  check_element_under_test(options, report, rng);
  report.checks.push_back(check_cubic_1d(options.random_samples, rng));
  check_reference_element(options, report, rng);
  check_global_space(options, report);

  report.conditioning = unisolvency_report();
  const double ratio = report.conditioning.at(Enrichment::XCubedYPlusXYCubed).condition /
                       report.conditioning.at(Enrichment::XCubedYMinusXYCubed).condition;
  report.checks.push_back({"conditioning-ratio", ratio, 10.0, ratio >= 10.0,
                           "cond(x^3y+xy^3) / cond(x^3y-xy^3)"});
  return report;
}

void write_verify_report(std::ostream& os, const VerifyReport& report) {
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << "Enrichment conditioning (12x11 Gauss-value matrix):\n";
  for (const auto& e : report.conditioning.entries) {
    os << "  " << std::left << std::setw(10) << to_string(e.enrichment) << std::right
       << " rank " << std::setw(2) << e.rank << "  sigma_min " << std::scientific
       << std::setprecision(4) << e.sigma_min << "  condition " << e.condition << '\n';
    os.flags(flags);
  }
  os << "Checks:\n";
  for (const auto& c : report.checks) {
    os << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << std::left << std::setw(26) << c.name
       << std::right << std::scientific << std::setprecision(3) << " measured " << c.measured
       << "  threshold " << c.threshold;
    os.flags(flags);
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << '\n';
  }
  for (const auto& w : report.warnings) os << "WARNING (conditioning): " << w << '\n';
  os << (report.all_passed() ? "verify-element: all checks passed\n"
                             : "verify-element: FAILED\n");
  os.flags(flags);
  os.precision(prec);
}

}  // namespace nc3
