#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <vector>

#include "nc3/geometry.hpp"
#include "nc3/ref_element.hpp"

namespace nc3 {

/// Affine map x = A * xhat + b from the reference square onto a parallelogram.
struct AffineMap {
  // Column-major: a00 a10 | a01 a11.
  double a00 = 1.0, a01 = 0.0, a10 = 0.0, a11 = 1.0;
  Vec2 b;

  double det() const { return a00 * a11 - a01 * a10; }
  Vec2 apply(Vec2 xhat) const {
    return {a00 * xhat.x + a01 * xhat.y + b.x, a10 * xhat.x + a11 * xhat.y + b.y};
  }
  Vec2 inverse(Vec2 x) const {
    const Vec2 d = x - b;
    const double id = 1.0 / det();
    return {id * (a11 * d.x - a01 * d.y), id * (-a10 * d.x + a00 * d.y)};
  }
  /// Physical gradient from a reference gradient: A^{-T} * ghat.
  Vec2 push_gradient(Vec2 ghat) const {
    const double id = 1.0 / det();
    return {id * (a11 * ghat.x - a10 * ghat.y), id * (-a01 * ghat.x + a00 * ghat.y)};
  }
};

struct MeshEdge {
  /// Canonical orientation: vertices[0] is lexicographically smaller.
  std::array<int, 2> vertices{};
  /// One or two adjacent elements, lower id first; -1 when absent.
  std::array<int, 2> elements{-1, -1};
  bool boundary = false;
};

struct MeshElement {
  /// Counterclockwise; vertices[0] is the image of (-1,-1).
  std::array<int, 4> vertices{};
  /// edges[j] joins vertices[j] and vertices[(j+1)%4].
  std::array<int, 4> edges{};
  /// True when the canonical orientation of edges[j] runs from vertices[j+1]
  /// to vertices[j], i.e. against the local counterclockwise direction.
  std::array<bool, 4> reversed{};
};

/// Three Gauss points of an edge: M+ nearer the canonical first endpoint,
/// then the midpoint M, then M-.
struct EdgeGaussPoints {
  Vec2 plus;
  Vec2 mid;
  Vec2 minus;
};

/// Parallelogram mesh with full incidence information. Immutable once built.
class Mesh {
 public:
  /// Builds incidence from vertex coordinates and counterclockwise cells.
  /// Throws InvalidDomainError for degenerate or clockwise cells and for
  /// non-parallelogram cells.
  static Mesh from_cells(std::vector<Vec2> vertices, std::vector<std::array<int, 4>> cells);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_elements() const { return static_cast<int>(elements_.size()); }
  int num_interior_vertices() const;
  int num_interior_edges() const;

  const std::vector<Vec2>& vertices() const { return vertices_; }
  Vec2 vertex(int v) const { return vertices_.at(v); }
  bool vertex_on_boundary(int v) const { return vertex_boundary_.at(v); }

  const std::vector<MeshEdge>& edges() const { return edges_; }
  const MeshEdge& edge(int e) const { return edges_.at(e); }

  const std::vector<MeshElement>& elements() const { return elements_; }
  const MeshElement& element(int r) const { return elements_.at(r); }

  /// Local index (0..3) of edge e within element r, or -1.
  int local_edge_index(int element_id, int edge_id) const;

  /// Element containing pt (lowest id on ties), or nullopt.
  std::optional<int> locate(Vec2 pt, double tol = 1e-12) const;

 private:
  std::vector<Vec2> vertices_;
  std::vector<bool> vertex_boundary_;
  std::vector<MeshEdge> edges_;
  std::vector<MeshElement> elements_;
};

/// n x n grid of congruent parallelograms tiling origin + [0,1] span_u +
/// [0,1] span_v. Throws InvalidDomainError for n < 1 or dependent spans.
Mesh uniform_grid(Vec2 origin, Vec2 span_u, Vec2 span_v, int n);

/// uniform_grid on the unit square.
Mesh unit_square_grid(int n);

AffineMap affine_map(const Mesh& mesh, int element_id);

EdgeGaussPoints edge_gauss_points(const Mesh& mesh, int edge_id);

/// Images of the 12 reference Gauss points under the element's affine map.
std::array<Vec2, kNumGaussPoints> element_gauss_points(const Mesh& mesh, int element_id);

/// Plain-text dump:
///   vertices <N>            then per vertex:  <id> <x> <y> <boundary 0|1>
///   edges <N>               then per edge:    <id> <v0> <v1> <el0> <el1> <boundary 0|1>
///   elements <N>            then per element: <id> <v0..v3> <e0..e3> <rev0..rev3>
/// Missing neighbours are written as -1.
void write_mesh(std::ostream& os, const Mesh& mesh);

}  // namespace nc3
