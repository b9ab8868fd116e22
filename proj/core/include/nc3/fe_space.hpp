#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "nc3/mesh.hpp"
#include "nc3/ref_element.hpp"

namespace nc3 {

enum class SpaceKind {
  /// Functions vanishing at all boundary Gauss points.
  Dirichlet0,
  /// The full space, with one global function omitted.
  Full,
};

enum class BasisType { Vertex, EdgePlus, EdgeMinus };

/// A global basis function: type plus the vertex or edge it belongs to.
struct BasisId {
  BasisType type = BasisType::Vertex;
  int entity = 0;
  friend bool operator==(const BasisId&, const BasisId&) = default;
};

inline constexpr int kNoDof = -1;

/// Global numbering of the vertex, edge+ and edge- functions.
///
/// Full: every vertex function and both edge functions of every edge, except
/// the edge- function of the highest-numbered edge; total = NV + 2NE - 1.
/// Dirichlet0: only interior vertices and interior edges; total = NVi + 2NEi.
/// Dofs are numbered vertices first (ascending id), then edges (ascending id,
/// plus before minus).
struct DofMap {
  SpaceKind kind = SpaceKind::Full;
  std::vector<int> vertex_dof;
  std::vector<int> edge_plus_dof;
  std::vector<int> edge_minus_dof;
  std::optional<BasisId> dropped;
  /// dof id -> basis function.
  std::vector<BasisId> basis;
  int total = 0;

  int dof_of(BasisId id) const;
};

/// Throws EmptySpaceError for Dirichlet0 when the mesh has no interior
/// vertex or edge.
DofMap build_dofmap(const Mesh& mesh, SpaceKind kind);

/// A global basis function restricted to one element, identified by its
/// local generator slot.
struct LocalDof {
  int slot = 0;
  int dof = 0;
};

/// Global functions supported on the element, slot-ascending.
std::vector<LocalDof> element_local_global(const Mesh& mesh, const DofMap& dofmap,
                                           int element_id);

/// Local generator slot representing the basis function on the element, or
/// -1 when the element lies outside its support.
int local_slot(const Mesh& mesh, int element_id, BasisId id);

/// Gauss values (reference ordering) of a global basis function on one
/// element; all zeros when the element lies outside its support.
GaussValues local_values_of_global_basis(const Mesh& mesh, const DofMap& dofmap,
                                         int element_id, int dof_id);

/// Least-squares fit in the local space to 12 Gauss values; exact when the
/// values satisfy the local relation.
PolyCoeffs interpolate_local(std::span<const double, kNumGaussPoints> values);

using ScalarField = std::function<double(Vec2)>;
using VectorField = std::function<Vec2(Vec2)>;

/// Elementwise interpolant: interpolate_local applied to u sampled at each
/// element's Gauss points. Result is in reference coordinates per element.
std::vector<PolyCoeffs> interpolate_elementwise(const Mesh& mesh, const ScalarField& u);

/// Coefficients of the global basis functions for a given dof map.
class FeFunction {
 public:
  explicit FeFunction(const DofMap& dofmap);
  FeFunction(const DofMap& dofmap, std::vector<double> coefficients);

  const DofMap& dofmap() const { return *dofmap_; }
  const std::vector<double>& coefficients() const { return coefficients_; }
  std::vector<double>& coefficients() { return coefficients_; }

 private:
  const DofMap* dofmap_;
  std::vector<double> coefficients_;
};

/// Restriction of f to an element, in reference coordinates.
PolyCoeffs element_polynomial(const Mesh& mesh, const FeFunction& f, int element_id);

/// All elementwise restrictions of f.
std::vector<PolyCoeffs> element_polynomials(const Mesh& mesh, const FeFunction& f);

/// Value of f at a physical point (lowest element id on shared boundaries).
/// Throws OutOfDomainError outside the mesh.
double evaluate_fe_function(const Mesh& mesh, const FeFunction& f, Vec2 pt);

}  // namespace nc3
