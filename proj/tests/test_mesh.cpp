#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "nc3/errors.hpp"
#include "nc3/mesh.hpp"

namespace nc3 {
namespace {

const double s = std::sqrt(3.0 / 5.0);

void expect_point(Vec2 a, Vec2 b, double tol = 1e-15) {
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
}

TEST(Mesh, CountsOnUnitSquare) {
  const Mesh m2 = unit_square_grid(2);
  EXPECT_EQ(m2.num_vertices(), 9);
  EXPECT_EQ(m2.num_edges(), 12);
  EXPECT_EQ(m2.num_elements(), 4);
  EXPECT_EQ(m2.num_interior_vertices(), 1);
  EXPECT_EQ(m2.num_interior_edges(), 4);

  const Mesh m4 = unit_square_grid(4);
  EXPECT_EQ(m4.num_vertices(), 25);
  EXPECT_EQ(m4.num_edges(), 40);
  EXPECT_EQ(m4.num_elements(), 16);
}

TEST(Mesh, EulerRelationAndBoundaryCounts) {
  for (int n = 1; n <= 12; ++n) {
    const Mesh m = uniform_grid({0.5, -1.0}, {2.0, 0.5}, {-0.3, 1.0}, n);
    EXPECT_EQ(m.num_vertices() - m.num_edges() + m.num_elements(), 1) << n;
    EXPECT_EQ(m.num_interior_vertices(), (n - 1) * (n - 1)) << n;
    EXPECT_EQ(m.num_edges() - m.num_interior_edges(), 4 * n) << n;
  }
}

TEST(Mesh, AffineMapOfCornerElement) {
  const Mesh m = unit_square_grid(2);
  const AffineMap f = affine_map(m, 0);
  EXPECT_DOUBLE_EQ(f.a00, 0.25);
  EXPECT_DOUBLE_EQ(f.a01, 0.0);
  EXPECT_DOUBLE_EQ(f.a10, 0.0);
  EXPECT_DOUBLE_EQ(f.a11, 0.25);
  expect_point(f.b, {0.25, 0.25});
}

TEST(Mesh, AffineMapOfReferenceSizedElement) {
  const Mesh m = uniform_grid({-1, -1}, {2, 0}, {0, 2}, 1);
  const AffineMap f = affine_map(m, 0);
  EXPECT_DOUBLE_EQ(f.a00, 1.0);
  EXPECT_DOUBLE_EQ(f.a01, 0.0);
  EXPECT_DOUBLE_EQ(f.a10, 0.0);
  EXPECT_DOUBLE_EQ(f.a11, 1.0);
  expect_point(f.b, {0, 0});
}

TEST(Mesh, AffineMapOfShearedElement) {
  const Mesh m = uniform_grid({0, 0}, {1, 0}, {1, 1}, 1);
  const AffineMap f = affine_map(m, 0);
  EXPECT_DOUBLE_EQ(f.a00, 0.5);
  EXPECT_DOUBLE_EQ(f.a01, 0.5);
  EXPECT_DOUBLE_EQ(f.a10, 0.0);
  EXPECT_DOUBLE_EQ(f.a11, 0.5);
  expect_point(f.b, {1.0, 0.5});
  // Reference corners land on the cell corners.
  const auto& rv = reference_vertices();
  for (int k = 0; k < 4; ++k) {
    expect_point(f.apply(rv[k]), m.vertex(m.element(0).vertices[k]));
    expect_point(f.inverse(f.apply(rv[k])), rv[k]);
  }
}

TEST(Mesh, PushGradientIsInverseTranspose) {
  const Mesh m = uniform_grid({0, 0}, {1, 0}, {1, 1}, 3);
  const AffineMap f = affine_map(m, 4);
  // For u(x) = c . x, the reference gradient is A^T c.
  const Vec2 c{0.7, -1.3};
  const Vec2 ghat{f.a00 * c.x + f.a10 * c.y, f.a01 * c.x + f.a11 * c.y};
  expect_point(f.push_gradient(ghat), c, 1e-14);
}

TEST(Mesh, ClockwiseSpansAreReoriented) {
  const Mesh m = uniform_grid({0, 0}, {0, 1}, {1, 0}, 2);
  for (int r = 0; r < m.num_elements(); ++r) EXPECT_GT(affine_map(m, r).det(), 0.0);
}

TEST(Mesh, DegenerateSpansAreRejected) {
  EXPECT_THROW(uniform_grid({0, 0}, {1, 1}, {2, 2}, 2), InvalidDomainError);
  EXPECT_THROW(uniform_grid({0, 0}, {0, 0}, {0, 1}, 2), InvalidDomainError);
  EXPECT_THROW(unit_square_grid(0), InvalidDomainError);
}

TEST(Mesh, FromCellsRejectsBadCells) {
  const std::vector<Vec2> v = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  EXPECT_THROW(Mesh::from_cells(v, {{0, 3, 2, 1}}), InvalidDomainError);
  EXPECT_THROW(Mesh::from_cells({{0, 0}, {1, 0}, {2, 1}, {0, 1}}, {{0, 1, 2, 3}}),
               InvalidDomainError);
  EXPECT_THROW(Mesh::from_cells(v, {{0, 1, 2, 7}}), InvalidDomainError);
  EXPECT_NO_THROW(Mesh::from_cells(v, {{0, 1, 2, 3}}));
}

TEST(Mesh, CanonicalEdgeOrientation) {
  const Mesh m = uniform_grid({0, 0}, {1, 0}, {1, 1}, 3);
  for (const MeshEdge& e : m.edges()) {
    EXPECT_TRUE(lex_less(m.vertex(e.vertices[0]), m.vertex(e.vertices[1])));
  }
  for (int r = 0; r < m.num_elements(); ++r) {
    const MeshElement& el = m.element(r);
    for (int j = 0; j < 4; ++j) {
      const MeshEdge& e = m.edge(el.edges[j]);
      const int a = el.vertices[j], b = el.vertices[(j + 1) % 4];
      if (el.reversed[j]) {
        EXPECT_EQ(e.vertices[0], b);
        EXPECT_EQ(e.vertices[1], a);
      } else {
        EXPECT_EQ(e.vertices[0], a);
        EXPECT_EQ(e.vertices[1], b);
      }
    }
  }
}

TEST(Mesh, IncidenceRelationsAreMutuallyInverse) {
  const Mesh m = unit_square_grid(5);
  std::multiset<std::pair<int, int>> from_elements, from_edges;
  for (int r = 0; r < m.num_elements(); ++r) {
    for (int j = 0; j < 4; ++j) {
      from_elements.insert({r, m.element(r).edges[j]});
      EXPECT_EQ(m.local_edge_index(r, m.element(r).edges[j]), j);
    }
  }
  for (int e = 0; e < m.num_edges(); ++e) {
    const MeshEdge& ed = m.edge(e);
    EXPECT_GE(ed.elements[0], 0);
    EXPECT_EQ(ed.boundary, ed.elements[1] < 0);
    for (int r : ed.elements) {
      if (r >= 0) from_edges.insert({r, e});
    }
    if (ed.elements[1] >= 0) EXPECT_LT(ed.elements[0], ed.elements[1]);
  }
  EXPECT_EQ(from_elements, from_edges);
  EXPECT_EQ(m.local_edge_index(0, m.num_edges() - 1), -1);
}

TEST(Mesh, BoundaryFlagsOnUnitSquare) {
  const Mesh m = unit_square_grid(3);
  for (int v = 0; v < m.num_vertices(); ++v) {
    const Vec2 p = m.vertex(v);
    const bool on = p.x == 0.0 || p.y == 0.0 || std::abs(p.x - 1.0) < 1e-15 ||
                    std::abs(p.y - 1.0) < 1e-15;
    EXPECT_EQ(m.vertex_on_boundary(v), on) << v;
  }
}

TEST(Mesh, EdgeGaussPointsOfUnitEdge) {
  const Mesh m = unit_square_grid(1);
  // Bottom edge (0,0)-(1,0) is the first edge of element 0.
  const EdgeGaussPoints g = edge_gauss_points(m, m.element(0).edges[0]);
  expect_point(g.plus, {(1 - s) / 2, 0});
  expect_point(g.mid, {0.5, 0});
  expect_point(g.minus, {(1 + s) / 2, 0});
}

TEST(Mesh, EdgeGaussPointsOfReferenceBottomEdge) {
  const Mesh m = uniform_grid({-1, -1}, {2, 0}, {0, 2}, 1);
  const EdgeGaussPoints g = edge_gauss_points(m, m.element(0).edges[0]);
  const auto& ref = reference_gauss_points();
  expect_point(g.plus, ref[0]);
  expect_point(g.mid, ref[1]);
  expect_point(g.minus, ref[2]);
}

TEST(Mesh, ElementGaussPointsOfReferenceElement) {
  const Mesh m = uniform_grid({-1, -1}, {2, 0}, {0, 2}, 1);
  const auto pts = element_gauss_points(m, 0);
  const auto& ref = reference_gauss_points();
  for (int i = 0; i < 12; ++i) expect_point(pts[i], ref[i]);
  expect_point(pts[11], {-1, -s});
}

TEST(Mesh, UnitSquareGaussPointsLieOnBoundary) {
  const Mesh m = unit_square_grid(1);
  for (Vec2 p : element_gauss_points(m, 0)) {
    const bool on = std::abs(p.x) < 1e-15 || std::abs(p.y) < 1e-15 ||
                    std::abs(p.x - 1) < 1e-15 || std::abs(p.y - 1) < 1e-15;
    EXPECT_TRUE(on) << p.x << "," << p.y;
  }
}

TEST(Mesh, NeighboursShareEdgePointsAndAgreeOnPlus) {
  const Mesh m = uniform_grid({0, 0}, {1, 0}, {0.5, 1}, 4);
  for (int e = 0; e < m.num_edges(); ++e) {
    const MeshEdge& ed = m.edge(e);
    if (ed.boundary) continue;
    const EdgeGaussPoints g = edge_gauss_points(m, e);
    for (int r : ed.elements) {
      const int j = m.local_edge_index(r, e);
      const auto pts = element_gauss_points(m, r);
      // Local order along the edge is counterclockwise; canonical plus is the
      // first local point unless the edge is reversed in this element.
      const bool rev = m.element(r).reversed[j];
      expect_point(pts[3 * j + 1], g.mid, 1e-14);
      expect_point(pts[3 * j + (rev ? 2 : 0)], g.plus, 1e-14);
      expect_point(pts[3 * j + (rev ? 0 : 2)], g.minus, 1e-14);
    }
  }
}

TEST(Mesh, LocateReturnsLowestElementOnTies) {
  const Mesh m = unit_square_grid(2);
  EXPECT_EQ(m.locate({0.25, 0.25}), 0);
  EXPECT_EQ(m.locate({0.75, 0.75}), 3);
  EXPECT_EQ(m.locate({0.5, 0.5}), 0);
  EXPECT_EQ(m.locate({0.75, 0.5}), 1);
  EXPECT_FALSE(m.locate({1.2, 0.5}).has_value());
}

TEST(Mesh, WriteMeshHeaders) {
  const Mesh m = unit_square_grid(2);
  std::ostringstream os;
  write_mesh(os, m);
  std::istringstream in(os.str());
  std::string line;
  int lines = 0;
  std::vector<std::string> headers;
  while (std::getline(in, line)) {
    ++lines;
    if (std::isalpha(static_cast<unsigned char>(line[0]))) headers.push_back(line);
  }
  EXPECT_EQ(headers, (std::vector<std::string>{"vertices 9", "edges 12", "elements 4"}));
  EXPECT_EQ(lines, 3 + 9 + 12 + 4);
}

}  // namespace
}  // namespace nc3
