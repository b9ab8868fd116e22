#pragma once

#include <functional>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "nc3/fe_space.hpp"
#include "nc3/mesh.hpp"
#include "nc3/quadrature.hpp"
#include "nc3/sparse.hpp"

namespace nc3 {

using TensorField = std::function<Sym2(Vec2)>;
/// Boundary datum evaluated at a boundary point with its outward unit normal.
using BoundaryField = std::function<double(Vec2 point, Vec2 normal)>;

struct DirichletBC {};

/// nu . (alpha grad u) + gamma u = g on the boundary.
struct NeumannBC {
  BoundaryField g;
  ScalarField gamma;
};

/// -div(alpha grad u) + beta u = f with homogeneous Dirichlet or Robin/Neumann
/// boundary data.
struct Problem {
  TensorField alpha = [](Vec2) { return Sym2::identity(); };
  ScalarField beta = [](Vec2) { return 0.0; };
  ScalarField f = [](Vec2) { return 0.0; };
  std::variant<DirichletBC, NeumannBC> bc = DirichletBC{};

  /// Space the problem is posed in: Dirichlet0 for DirichletBC, Full otherwise.
  SpaceKind space_kind() const;
};

struct QuadratureOrders {
  int volume = 5;
  int edge = 5;
  int error = 7;
};

using LocalMatrix = Eigen::Matrix<double, kNumGenerators, kNumGenerators>;
using LocalVector = Eigen::Matrix<double, kNumGenerators, 1>;

/// Element matrix and load vector indexed by local generator slot.
struct LocalSystem {
  LocalMatrix matrix = LocalMatrix::Zero();
  LocalVector load = LocalVector::Zero();
};

/// Volume contributions of one element: entry (i, j) is
/// int_R alpha grad psi_i . grad psi_j + beta psi_i psi_j, load i is
/// int_R f psi_i, for the 12 pushed-forward generators psi. `rule` lives on
/// the reference square. Throws ConfigurationError when alpha is not positive
/// definite or beta is negative at a quadrature point.
LocalSystem local_matrix(const Mesh& mesh, int element_id, const Problem& problem,
                         const QuadRule2D& rule);

struct SparseSystem {
  CsrMatrix matrix;
  std::vector<double> rhs;
};

struct AssemblyOptions {
  QuadratureOrders orders;
  /// Worker threads for element kernels; the scatter is always serial, so
  /// results do not depend on this value.
  int threads = 1;
};

/// Global system for the problem on the given space. Neumann problems also
/// receive int_G gamma psi_i psi_j and int_G g psi_i over boundary edges.
/// Throws ConfigurationError when dofmap.kind does not match the problem.
SparseSystem assemble(const Mesh& mesh, const DofMap& dofmap, const Problem& problem,
                      const AssemblyOptions& options = {});

struct SolveOutcome {
  std::vector<double> coefficients;
  int iterations = 0;
  double final_residual = 0.0;
  std::vector<double> residual_history;
};

inline constexpr double kDefaultSolverTolerance = 1e-12;

/// Jacobi-preconditioned CG; max_iter <= 0 selects 20 * dimension.
SolveOutcome solve(const SparseSystem& system, double rel_tol = kDefaultSolverTolerance,
                   int max_iter = 0);

struct ErrorPair {
  double l2 = 0.0;
  double energy = 0.0;
};

/// L2 and broken energy errors of elementwise polynomials (reference
/// coordinates) against an exact solution.
ErrorPair broken_errors(const Mesh& mesh, std::span<const PolyCoeffs> polys, const ScalarField& u,
                        const VectorField& grad_u, const Problem& problem, int error_order = 7);

ErrorPair compute_errors(const Mesh& mesh, const FeFunction& u_h, const ScalarField& u,
                         const VectorField& grad_u, const Problem& problem, int error_order = 7);

/// log2(coarse / fine). Throws InvalidArgumentError for non-positive input.
double observed_order(double e_coarse, double e_fine);

/// max over interior edges and q in {1, t, t^2} of |int_E [w] q ds|, where t
/// is the edge parameter in [-1, 1] along the canonical orientation.
double jump_moments(const Mesh& mesh, std::span<const PolyCoeffs> polys);
double jump_orthogonality_check(const Mesh& mesh, const FeFunction& w);

}  // namespace nc3
