#include "nc3/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "nc3/errors.hpp"

namespace nc3 {
namespace {

// Reference values and gradients of the 12 generators at each rule point.
struct Tabulation {
  std::vector<std::array<double, kNumGenerators>> values;
  std::vector<std::array<Vec2, kNumGenerators>> grads;
};

Tabulation tabulate(std::span<const Vec2> points) {
  const auto& gens = local_generators();
  Tabulation t;
  t.values.resize(points.size());
  t.grads.resize(points.size());
  for (std::size_t q = 0; q < points.size(); ++q) {
    for (int s = 0; s < kNumGenerators; ++s) {
      t.values[q][s] = eval(gens[s], points[q]);
      t.grads[q][s] = eval_grad(gens[s], points[q]);
    }
  }
  return t;
}

void check_coefficients(const Sym2& a, double beta, Vec2 x) {
  if (!(a.min_eigenvalue() > 0.0)) {
    throw ConfigurationError("diffusion tensor not positive definite at (" +
                             std::to_string(x.x) + ", " + std::to_string(x.y) + ")");
  }
  if (!(beta >= 0.0)) {
    throw ConfigurationError("reaction coefficient negative at (" + std::to_string(x.x) + ", " +
                             std::to_string(x.y) + ")");
  }
}

void volume_terms(const Mesh& mesh, int element_id, const Problem& problem,
                  const QuadRule2D& rule, const Tabulation& tab, LocalSystem& out) {
  const AffineMap fmap = affine_map(mesh, element_id);
  const double jac = std::abs(fmap.det());
  std::array<Vec2, kNumGenerators> grads{};
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Vec2 x = fmap.apply(rule.points[q]);
    const double w = rule.weights[q] * jac;
    const Sym2 a = problem.alpha(x);
    const double beta = problem.beta(x);
    check_coefficients(a, beta, x);
    const double fx = problem.f(x);
    const auto& vals = tab.values[q];
    for (int s = 0; s < kNumGenerators; ++s) grads[s] = fmap.push_gradient(tab.grads[q][s]);
    for (int i = 0; i < kNumGenerators; ++i) {
      const Vec2 agi = a.apply(grads[i]);
      for (int j = i; j < kNumGenerators; ++j) {
        out.matrix(i, j) += w * (dot(agi, grads[j]) + beta * vals[i] * vals[j]);
      }
      out.load(i) += w * fx * vals[i];
    }
  }
  for (int i = 0; i < kNumGenerators; ++i) {
    for (int j = 0; j < i; ++j) out.matrix(i, j) = out.matrix(j, i);
  }
}

// Robin/Neumann contribution of local edge j of the element.
void boundary_terms(const Mesh& mesh, int element_id, int j, const NeumannBC& bc,
                    const QuadRule1D& rule, LocalSystem& out) {
  const auto& gens = local_generators();
  const auto& rv = reference_vertices();
  const Vec2 ha = rv[j];
  const Vec2 hb = rv[(j + 1) % 4];
  const AffineMap fmap = affine_map(mesh, element_id);
  const Vec2 pa = fmap.apply(ha);
  const Vec2 pb = fmap.apply(hb);
  const Vec2 tangent = pb - pa;
  const double length = norm(tangent);
  const Vec2 normal{tangent.y / length, -tangent.x / length};

  std::array<double, kNumGenerators> vals{};
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double s = 0.5 * (rule.nodes[q] + 1.0);
    const Vec2 xhat = ha + s * (hb - ha);
    const Vec2 x = fmap.apply(xhat);
    const double w = rule.weights[q] * 0.5 * length;
    const double gamma = bc.gamma ? bc.gamma(x) : 0.0;
    const double g = bc.g ? bc.g(x, normal) : 0.0;
    for (int k = 0; k < kNumGenerators; ++k) vals[k] = eval(gens[k], xhat);
    for (int a = 0; a < kNumGenerators; ++a) {
      if (gamma != 0.0) {
        for (int b = 0; b < kNumGenerators; ++b) out.matrix(a, b) += w * gamma * vals[a] * vals[b];
      }
      out.load(a) += w * g * vals[a];
    }
  }
}

}  // namespace

SpaceKind Problem::space_kind() const {
  return std::holds_alternative<DirichletBC>(bc) ? SpaceKind::Dirichlet0 : SpaceKind::Full;
}

LocalSystem local_matrix(const Mesh& mesh, int element_id, const Problem& problem,
                         const QuadRule2D& rule) {
  LocalSystem out;
  volume_terms(mesh, element_id, problem, rule, tabulate(rule.points), out);
  return out;
}

SparseSystem assemble(const Mesh& mesh, const DofMap& dofmap, const Problem& problem,
                      const AssemblyOptions& options) {
  if (dofmap.kind != problem.space_kind()) {
    throw ConfigurationError(problem.space_kind() == SpaceKind::Dirichlet0
                                 ? "Dirichlet problem requires a Dirichlet0 dof map"
                                 : "Neumann problem requires a Full dof map");
  }
  const QuadRule2D vrule = tensor_rule(options.orders.volume, options.orders.volume);
  const QuadRule1D erule = gauss_1d(options.orders.edge);
  const Tabulation tab = tabulate(vrule.points);
  const auto* neumann = std::get_if<NeumannBC>(&problem.bc);

  const int ne = mesh.num_elements();
  std::vector<LocalSystem> locals(ne);
  const auto kernel = [&](int begin, int end) {
    for (int r = begin; r < end; ++r) {
      volume_terms(mesh, r, problem, vrule, tab, locals[r]);
      if (neumann) {
        const auto& el = mesh.element(r);
        for (int j = 0; j < 4; ++j) {
          if (mesh.edge(el.edges[j]).boundary) boundary_terms(mesh, r, j, *neumann, erule, locals[r]);
        }
      }
    }
  };

  const int nthreads = std::clamp(options.threads, 1, std::max(1, ne));
  if (nthreads == 1) {
    kernel(0, ne);
  } else {
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(nthreads);
    const int chunk = (ne + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
      const int begin = t * chunk;
      const int end = std::min(ne, begin + chunk);
      workers.emplace_back([&, t, begin, end] {
        try {
          kernel(begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::vector<std::vector<LocalDof>> l2g(ne);
  std::vector<std::vector<int>> pattern(dofmap.total);
  for (int r = 0; r < ne; ++r) {
    l2g[r] = element_local_global(mesh, dofmap, r);
    for (const auto& a : l2g[r]) {
      for (const auto& b : l2g[r]) pattern[a.dof].push_back(b.dof);
    }
  }

  SparseSystem sys;
  sys.matrix = CsrMatrix::from_pattern(pattern);
  sys.rhs.assign(dofmap.total, 0.0);
  for (int r = 0; r < ne; ++r) {
    const LocalSystem& loc = locals[r];
    for (const auto& a : l2g[r]) {
      for (const auto& b : l2g[r]) sys.matrix.add(a.dof, b.dof, loc.matrix(a.slot, b.slot));
      sys.rhs[a.dof] += loc.load(a.slot);
    }
  }
  return sys;
}

SolveOutcome solve(const SparseSystem& system, double rel_tol, int max_iter) {
  if (max_iter <= 0) max_iter = 20 * std::max(1, system.matrix.rows());
  PcgResult r = pcg_solve(system.matrix, system.rhs, rel_tol, max_iter);
  return {std::move(r.x), r.iterations, r.final_residual, std::move(r.residual_history)};
}

ErrorPair broken_errors(const Mesh& mesh, std::span<const PolyCoeffs> polys, const ScalarField& u,
                        const VectorField& grad_u, const Problem& problem, int error_order) {
  if (static_cast<int>(polys.size()) != mesh.num_elements()) {
    throw InvalidArgumentError("one polynomial per element required");
  }
  const QuadRule2D rule = tensor_rule(error_order, error_order);
  double l2 = 0.0;
  double energy = 0.0;
  for (int r = 0; r < mesh.num_elements(); ++r) {
    const AffineMap fmap = affine_map(mesh, r);
    const double jac = std::abs(fmap.det());
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Vec2 xhat = rule.points[q];
      const Vec2 x = fmap.apply(xhat);
      const double w = rule.weights[q] * jac;
      const double e = u(x) - eval(polys[r], xhat);
      const Vec2 ge = grad_u(x) - fmap.push_gradient(eval_grad(polys[r], xhat));
      l2 += w * e * e;
      energy += w * (dot(problem.alpha(x).apply(ge), ge) + problem.beta(x) * e * e);
    }
  }
  return {std::sqrt(l2), std::sqrt(energy)};
}

ErrorPair compute_errors(const Mesh& mesh, const FeFunction& u_h, const ScalarField& u,
                         const VectorField& grad_u, const Problem& problem, int error_order) {
  const auto polys = element_polynomials(mesh, u_h);
  return broken_errors(mesh, polys, u, grad_u, problem, error_order);
}

double observed_order(double e_coarse, double e_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0)) {
    throw InvalidArgumentError("observed_order requires positive errors");
  }
  return std::log2(e_coarse / e_fine);
}

double jump_moments(const Mesh& mesh, std::span<const PolyCoeffs> polys) {
  if (static_cast<int>(polys.size()) != mesh.num_elements()) {
    throw InvalidArgumentError("one polynomial per element required");
  }
  const QuadRule1D rule = gauss_1d(5);
  double worst = 0.0;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const auto& edge = mesh.edge(e);
    if (edge.boundary) continue;
    const Vec2 a = mesh.vertex(edge.vertices[0]);
    const Vec2 b = mesh.vertex(edge.vertices[1]);
    const Vec2 mid = 0.5 * (a + b);
    const Vec2 half = 0.5 * (b - a);
    const double ds = norm(half);
    const AffineMap f0 = affine_map(mesh, edge.elements[0]);
    const AffineMap f1 = affine_map(mesh, edge.elements[1]);
    const PolyCoeffs& p0 = polys[edge.elements[0]];
    const PolyCoeffs& p1 = polys[edge.elements[1]];
    double moments[3] = {0.0, 0.0, 0.0};
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double t = rule.nodes[q];
      const Vec2 x = mid + t * half;
      const double jump = eval(p0, f0.inverse(x)) - eval(p1, f1.inverse(x));
      const double w = rule.weights[q] * ds * jump;
      moments[0] += w;
      moments[1] += w * t;
      moments[2] += w * t * t;
    }
    for (double m : moments) worst = std::max(worst, std::abs(m));
  }
  return worst;
}

double jump_orthogonality_check(const Mesh& mesh, const FeFunction& w) {
  const auto polys = element_polynomials(mesh, w);
  return jump_moments(mesh, polys);
}

}  // namespace nc3
