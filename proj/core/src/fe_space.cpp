#include "nc3/fe_space.hpp"

#include <string>

#include "nc3/errors.hpp"

namespace nc3 {

int DofMap::dof_of(BasisId id) const {
  switch (id.type) {
    case BasisType::Vertex: return vertex_dof.at(id.entity);
    case BasisType::EdgePlus: return edge_plus_dof.at(id.entity);
    case BasisType::EdgeMinus: return edge_minus_dof.at(id.entity);
  }
  return kNoDof;
}

DofMap build_dofmap(const Mesh& mesh, SpaceKind kind) {
  DofMap map;
  map.kind = kind;
  map.vertex_dof.assign(mesh.num_vertices(), kNoDof);
  map.edge_plus_dof.assign(mesh.num_edges(), kNoDof);
  map.edge_minus_dof.assign(mesh.num_edges(), kNoDof);

  if (kind == SpaceKind::Full) {
    if (mesh.num_edges() == 0) throw EmptySpaceError("mesh has no edges");
    map.dropped = BasisId{BasisType::EdgeMinus, mesh.num_edges() - 1};
  }
  const bool dirichlet = kind == SpaceKind::Dirichlet0;

  int next = 0;
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    if (dirichlet && mesh.vertex_on_boundary(v)) continue;
    map.vertex_dof[v] = next++;
    map.basis.push_back({BasisType::Vertex, v});
  }
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (dirichlet && mesh.edge(e).boundary) continue;
    map.edge_plus_dof[e] = next++;
    map.basis.push_back({BasisType::EdgePlus, e});
    const BasisId minus{BasisType::EdgeMinus, e};
    if (map.dropped && *map.dropped == minus) continue;
    map.edge_minus_dof[e] = next++;
    map.basis.push_back(minus);
  }
  map.total = next;
  if (map.total == 0) {
    throw EmptySpaceError("space has no degrees of freedom (no interior vertices or edges)");
  }
  return map;
}

int local_slot(const Mesh& mesh, int element_id, BasisId id) {
  const auto& el = mesh.element(element_id);
  if (id.type == BasisType::Vertex) {
    for (int j = 0; j < 4; ++j) {
      if (el.vertices[j] == id.entity) return kVertexSlot0 + j;
    }
    return -1;
  }
  const int j = mesh.local_edge_index(element_id, id.entity);
  if (j < 0) return -1;
  // The global M+ is the local first point unless the edge runs against the
  // local counterclockwise direction.
  const bool plus = id.type == BasisType::EdgePlus;
  const bool local_first = plus != el.reversed[j];
  return (local_first ? kEdgePlusSlot0 : kEdgeMinusSlot0) + j;
}

std::vector<LocalDof> element_local_global(const Mesh& mesh, const DofMap& dofmap,
                                           int element_id) {
  const auto& el = mesh.element(element_id);
  std::vector<LocalDof> out;
  out.reserve(kNumGenerators);
  for (int j = 0; j < 4; ++j) {
    const int d = dofmap.vertex_dof[el.vertices[j]];
    if (d != kNoDof) out.push_back({kVertexSlot0 + j, d});
  }
  for (int j = 0; j < 4; ++j) {
    const int e = el.edges[j];
    const int d = el.reversed[j] ? dofmap.edge_minus_dof[e] : dofmap.edge_plus_dof[e];
    if (d != kNoDof) out.push_back({kEdgePlusSlot0 + j, d});
  }
  for (int j = 0; j < 4; ++j) {
    const int e = el.edges[j];
    const int d = el.reversed[j] ? dofmap.edge_plus_dof[e] : dofmap.edge_minus_dof[e];
    if (d != kNoDof) out.push_back({kEdgeMinusSlot0 + j, d});
  }
  return out;
}

GaussValues local_values_of_global_basis(const Mesh& mesh, const DofMap& dofmap,
                                         int element_id, int dof_id) {
  const BasisId id = dofmap.basis.at(dof_id);
  const int slot = local_slot(mesh, element_id, id);
  if (slot < 0) return GaussValues{};
  return generator_gauss_values(slot);
}

PolyCoeffs interpolate_local(std::span<const double, kNumGaussPoints> values) {
  return least_squares_fit(values);
}

std::vector<PolyCoeffs> interpolate_elementwise(const Mesh& mesh, const ScalarField& u) {
  std::vector<PolyCoeffs> out(mesh.num_elements());
  for (int r = 0; r < mesh.num_elements(); ++r) {
    const auto pts = element_gauss_points(mesh, r);
    GaussValues v{};
    for (int i = 0; i < kNumGaussPoints; ++i) v[i] = u(pts[i]);
    out[r] = interpolate_local(v);
  }
  return out;
}

FeFunction::FeFunction(const DofMap& dofmap)
    : dofmap_(&dofmap), coefficients_(static_cast<std::size_t>(dofmap.total), 0.0) {}

FeFunction::FeFunction(const DofMap& dofmap, std::vector<double> coefficients)
    : dofmap_(&dofmap), coefficients_(std::move(coefficients)) {
  if (static_cast<int>(coefficients_.size()) != dofmap.total) {
    throw InvalidArgumentError("coefficient vector has " + std::to_string(coefficients_.size()) +
                               " entries, dof map has " + std::to_string(dofmap.total));
  }
}

PolyCoeffs element_polynomial(const Mesh& mesh, const FeFunction& f, int element_id) {
  const auto& gens = local_generators();
  PolyCoeffs p;
  for (const LocalDof& ld : element_local_global(mesh, f.dofmap(), element_id)) {
    p += f.coefficients()[ld.dof] * gens[ld.slot];
  }
  return p;
}

std::vector<PolyCoeffs> element_polynomials(const Mesh& mesh, const FeFunction& f) {
  std::vector<PolyCoeffs> out(mesh.num_elements());
  for (int r = 0; r < mesh.num_elements(); ++r) out[r] = element_polynomial(mesh, f, r);
  return out;
}

double evaluate_fe_function(const Mesh& mesh, const FeFunction& f, Vec2 pt) {
  const auto r = mesh.locate(pt);
  if (!r) {
    throw OutOfDomainError("point (" + std::to_string(pt.x) + ", " + std::to_string(pt.y) +
                           ") lies outside the mesh");
  }
  const Vec2 xhat = affine_map(mesh, *r).inverse(pt);
  return eval(element_polynomial(mesh, f, *r), xhat);
}

}  // namespace nc3
