#include "nc3/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <string>

#include "nc3/errors.hpp"

namespace nc3 {

Mesh Mesh::from_cells(std::vector<Vec2> vertices, std::vector<std::array<int, 4>> cells) {
  Mesh m;
  m.vertices_ = std::move(vertices);
  m.vertex_boundary_.assign(m.vertices_.size(), false);
  m.elements_.reserve(cells.size());

  std::map<std::pair<int, int>, int> edge_ids;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    const auto& cell = cells[r];
    for (int v : cell) {
      if (v < 0 || v >= static_cast<int>(m.vertices_.size())) {
        throw InvalidDomainError("cell references unknown vertex " + std::to_string(v));
      }
    }
    const Vec2 p0 = m.vertices_[cell[0]];
    const Vec2 p1 = m.vertices_[cell[1]];
    const Vec2 p2 = m.vertices_[cell[2]];
    const Vec2 p3 = m.vertices_[cell[3]];
    const double area = cross(p1 - p0, p3 - p0);
    const double scale = std::max(norm(p1 - p0), norm(p3 - p0));
    if (!(area > 1e-14 * scale * scale)) {
      throw InvalidDomainError("cell " + std::to_string(r) +
                               " is degenerate or not counterclockwise");
    }
    const Vec2 defect = (p0 + p2) - (p1 + p3);
    if (norm(defect) > 1e-12 * scale) {
      throw InvalidDomainError("cell " + std::to_string(r) + " is not a parallelogram");
    }

    MeshElement el;
    el.vertices = cell;
    for (int j = 0; j < 4; ++j) {
      const int a = cell[j];
      const int b = cell[(j + 1) % 4];
      const bool a_first = lex_less(m.vertices_[a], m.vertices_[b]);
      const int first = a_first ? a : b;
      const int second = a_first ? b : a;
      auto [it, inserted] =
          edge_ids.try_emplace({std::min(a, b), std::max(a, b)}, static_cast<int>(m.edges_.size()));
      if (inserted) {
        MeshEdge e;
        e.vertices = {first, second};
        m.edges_.push_back(e);
      }
      MeshEdge& e = m.edges_[it->second];
      if (e.elements[0] < 0) {
        e.elements[0] = static_cast<int>(r);
      } else if (e.elements[1] < 0) {
        e.elements[1] = static_cast<int>(r);
      } else {
        throw InvalidDomainError("edge shared by more than two cells");
      }
      el.edges[j] = it->second;
      el.reversed[j] = !a_first;
    }
    m.elements_.push_back(el);
  }

  for (auto& e : m.edges_) {
    e.boundary = e.elements[1] < 0;
    if (e.boundary) {
      m.vertex_boundary_[e.vertices[0]] = true;
      m.vertex_boundary_[e.vertices[1]] = true;
    }
  }
  return m;
}

int Mesh::num_interior_vertices() const {
  return static_cast<int>(std::count(vertex_boundary_.begin(), vertex_boundary_.end(), false));
}

int Mesh::num_interior_edges() const {
  return static_cast<int>(
      std::count_if(edges_.begin(), edges_.end(), [](const MeshEdge& e) { return !e.boundary; }));
}

int Mesh::local_edge_index(int element_id, int edge_id) const {
  const auto& el = elements_.at(element_id);
  for (int j = 0; j < 4; ++j) {
    if (el.edges[j] == edge_id) return j;
  }
  return -1;
}

std::optional<int> Mesh::locate(Vec2 pt, double tol) const {
  for (int r = 0; r < num_elements(); ++r) {
    const Vec2 xhat = affine_map(*this, r).inverse(pt);
    if (std::abs(xhat.x) <= 1.0 + tol && std::abs(xhat.y) <= 1.0 + tol) return r;
  }
  return std::nullopt;
}

Mesh uniform_grid(Vec2 origin, Vec2 span_u, Vec2 span_v, int n) {
  if (n < 1) throw InvalidDomainError("grid resolution must be >= 1");
  const double scale = std::max(norm(span_u), norm(span_v));
  double area = cross(span_u, span_v);
  if (!(scale > 0.0) || !(std::abs(area) > 1e-14 * scale * scale)) {
    throw InvalidDomainError("domain spans are linearly dependent");
  }
  // Cells must come out counterclockwise.
  if (area < 0.0) std::swap(span_u, span_v);

  const double h = 1.0 / n;
  std::vector<Vec2> verts;
  verts.reserve(static_cast<std::size_t>(n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      verts.push_back(origin + (i * h) * span_u + (j * h) * span_v);
    }
  }
  std::vector<std::array<int, 4>> cells;
  cells.reserve(static_cast<std::size_t>(n) * n);
  const auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      cells.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  }
  return Mesh::from_cells(std::move(verts), std::move(cells));
}

Mesh unit_square_grid(int n) { return uniform_grid({0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, n); }

AffineMap affine_map(const Mesh& mesh, int element_id) {
  const auto& el = mesh.element(element_id);
  const Vec2 p0 = mesh.vertex(el.vertices[0]);
  const Vec2 p1 = mesh.vertex(el.vertices[1]);
  const Vec2 p2 = mesh.vertex(el.vertices[2]);
  const Vec2 p3 = mesh.vertex(el.vertices[3]);
  AffineMap f;
  const Vec2 cu = 0.5 * (p1 - p0);
  const Vec2 cv = 0.5 * (p3 - p0);
  f.a00 = cu.x;
  f.a10 = cu.y;
  f.a01 = cv.x;
  f.a11 = cv.y;
  f.b = 0.5 * (p0 + p2);
  return f;
}

EdgeGaussPoints edge_gauss_points(const Mesh& mesh, int edge_id) {
  const auto& e = mesh.edge(edge_id);
  const Vec2 a = mesh.vertex(e.vertices[0]);
  const Vec2 b = mesh.vertex(e.vertices[1]);
  const Vec2 mid = 0.5 * (a + b);
  const Vec2 half = 0.5 * (b - a);
  return {mid - kGaussOuter * half, mid, mid + kGaussOuter * half};
}

std::array<Vec2, kNumGaussPoints> element_gauss_points(const Mesh& mesh, int element_id) {
  const AffineMap f = affine_map(mesh, element_id);
  std::array<Vec2, kNumGaussPoints> out{};
  const auto& ref = reference_gauss_points();
  for (int i = 0; i < kNumGaussPoints; ++i) out[i] = f.apply(ref[i]);
  return out;
}

void write_mesh(std::ostream& os, const Mesh& mesh) {
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << std::setprecision(17);
  os << "vertices " << mesh.num_vertices() << '\n';
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    const Vec2 p = mesh.vertex(v);
    os << v << ' ' << p.x << ' ' << p.y << ' ' << (mesh.vertex_on_boundary(v) ? 1 : 0) << '\n';
  }
  os << "edges " << mesh.num_edges() << '\n';
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const auto& ed = mesh.edge(e);
    os << e << ' ' << ed.vertices[0] << ' ' << ed.vertices[1] << ' ' << ed.elements[0] << ' '
       << ed.elements[1] << ' ' << (ed.boundary ? 1 : 0) << '\n';
  }
  os << "elements " << mesh.num_elements() << '\n';
  for (int r = 0; r < mesh.num_elements(); ++r) {
    const auto& el = mesh.element(r);
    os << r;
    for (int v : el.vertices) os << ' ' << v;
    for (int e : el.edges) os << ' ' << e;
    for (bool rev : el.reversed) os << ' ' << (rev ? 1 : 0);
    os << '\n';
  }
  os.flags(flags);
  os.precision(prec);
}

}  // namespace nc3
