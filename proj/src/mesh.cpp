#include "hopflax/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <utility>

#include "hopflax/prng.hpp"

namespace hopflax {
namespace {

double cross(const Vector& a, const Vector& b) { return a.x() * b.y() - a.y() * b.x(); }

std::string tri_label(std::size_t t) { return "triangle " + std::to_string(t); }

// Compressed row storage from (row, value) pairs.
void build_csr(int rows, std::vector<std::pair<int, int>> entries, std::vector<int>& offset,
               std::vector<int>& index) {
  std::sort(entries.begin(), entries.end());
  entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
  offset.assign(rows + 1, 0);
  for (const auto& [r, _] : entries) ++offset[r + 1];
  for (int r = 0; r < rows; ++r) offset[r + 1] += offset[r];
  index.resize(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) index[k] = entries[k].second;
}

}  // namespace

TriMesh TriMesh::build(std::vector<Point> vertices, std::vector<Triangle> triangles) {
  const int nv = static_cast<int>(vertices.size());
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    auto& tri = triangles[t];
    for (int k = 0; k < 3; ++k) {
      if (tri[k] < 0 || tri[k] >= nv) {
        throw MeshError(tri_label(t) + ": vertex index " + std::to_string(tri[k]) +
                        " out of range [0, " + std::to_string(nv) + ")");
      }
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      throw MeshError(tri_label(t) + ": duplicate vertex in triangle");
    }
    const Point& a = vertices[tri[0]];
    const Vector ab = vertices[tri[1]] - a;
    const Vector ac = vertices[tri[2]] - a;
    const double area2 = cross(ab, ac);
    const double scale = std::max({ab.squaredNorm(), ac.squaredNorm(),
                                   (vertices[tri[2]] - vertices[tri[1]]).squaredNorm()});
    if (!(std::abs(area2) > 1e-12 * scale)) {
      throw MeshError(tri_label(t) + ": zero-area triangle");
    }
    if (area2 < 0) std::swap(tri[1], tri[2]);
  }

  TriMesh mesh;
  mesh.vertices_ = std::move(vertices);
  mesh.triangles_ = std::move(triangles);

  std::vector<std::pair<int, int>> incidence;
  std::vector<std::pair<int, int>> edges;  // (lo, hi), one per triangle side
  incidence.reserve(3 * mesh.triangles_.size());
  edges.reserve(3 * mesh.triangles_.size());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles_[t];
    for (int k = 0; k < 3; ++k) {
      incidence.emplace_back(tri[k], t);
      const int a = tri[k], b = tri[(k + 1) % 3];
      edges.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  build_csr(nv, std::move(incidence), mesh.patch_offset_, mesh.patch_index_);

  std::sort(edges.begin(), edges.end());
  mesh.on_boundary_.assign(nv, 0);
  std::vector<std::pair<int, int>> adjacency;
  for (std::size_t i = 0; i < edges.size();) {
    std::size_t j = i;
    while (j < edges.size() && edges[j] == edges[i]) ++j;
    const auto [a, b] = edges[i];
    if (j - i > 2) {
      throw MeshError("non-manifold edge (" + std::to_string(a) + ", " + std::to_string(b) +
                      ") shared by " + std::to_string(j - i) + " triangles");
    }
    if (j - i == 1) mesh.on_boundary_[a] = mesh.on_boundary_[b] = 1;
    adjacency.emplace_back(a, b);
    adjacency.emplace_back(b, a);
    i = j;
  }
  build_csr(nv, std::move(adjacency), mesh.neighbor_offset_, mesh.neighbor_index_);

  for (int v = 0; v < nv; ++v) {
    if (mesh.patch(v).empty()) {
      throw MeshError("vertex " + std::to_string(v) + " belongs to no triangle");
    }
    if (mesh.on_boundary_[v]) mesh.boundary_vertices_.push_back(v);
  }

  // Every interior vertex must reach the boundary along edges.
  std::vector<std::uint8_t> seen(mesh.on_boundary_);
  std::deque<int> frontier(mesh.boundary_vertices_.begin(), mesh.boundary_vertices_.end());
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop_front();
    for (int w : mesh.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        frontier.push_back(w);
      }
    }
  }
  for (int v = 0; v < nv; ++v) {
    if (!seen[v]) {
      throw MeshError("disconnected interior vertex " + std::to_string(v));
    }
  }
  return mesh;
}

int TriMesh::nearest_vertex(const Point& p) const {
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (int v = 0; v < num_vertices(); ++v) {
    const double d = (vertices_[v] - p).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = v;
    }
  }
  return best;
}

TriangleShape triangle_shape(const Point& a, const Point& b, const Point& c) {
  const double area2 = std::abs(cross(b - a, c - a));
  const double ea = (c - b).norm(), eb = (a - c).norm(), ec = (b - a).norm();
  TriangleShape s;
  s.h1 = std::max({ea, eb, ec});
  // The smallest height is the one dropped onto the longest edge.
  s.h0 = area2 / s.h1;
  return s;
}

MeshQuality mesh_quality(const TriMesh& mesh) {
  MeshQuality q;
  q.per_triangle.reserve(mesh.num_triangles());
  for (const auto& tri : mesh.triangles()) {
    const auto s = triangle_shape(mesh.vertex(tri[0]), mesh.vertex(tri[1]), mesh.vertex(tri[2]));
    q.h = std::max(q.h, s.h1);
    q.theta = std::max(q.theta, s.h1 / s.h0);
    q.per_triangle.push_back(s);
  }
  return q;
}

TriMesh generate_grid_mesh(const GridSpec& spec) {
  const int n = spec.n;
  if (n < 2) throw MeshError("grid needs at least 2 vertices per side");
  if (!(spec.perturb >= 0.0 && spec.perturb <= 0.25)) {
    throw MeshError("grid perturbation must lie in [0, 0.25]");
  }

  std::vector<Point> vertices;
  vertices.reserve(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      vertices.emplace_back(-0.5 + static_cast<double>(i) / (n - 1),
                            -0.5 + static_cast<double>(j) / (n - 1));
    }
  }

  if (spec.perturb > 0.0) {
    const double amplitude = spec.perturb / (n - 1) / std::sqrt(2.0);
    const int center = (n % 2 == 1) ? grid_center_vertex(n) : -1;
    Lcg64 rng(spec.seed);
    for (int j = 1; j + 1 < n; ++j) {
      for (int i = 1; i + 1 < n; ++i) {
        const int v = j * n + i;
        if (v == center) continue;
        const double dx = rng.uniform(-amplitude, amplitude);
        const double dy = rng.uniform(-amplitude, amplitude);
        vertices[v] += Vector(dx, dy);
      }
    }
  }

  std::vector<Triangle> triangles;
  triangles.reserve(2 * static_cast<std::size_t>(n - 1) * (n - 1));
  for (int j = 0; j + 1 < n; ++j) {
    for (int i = 0; i + 1 < n; ++i) {
      const int ll = j * n + i, lr = ll + 1, ul = ll + n, ur = ul + 1;
      if ((i + j) % 2 == 0) {
        triangles.push_back({ll, lr, ur});
        triangles.push_back({ll, ur, ul});
      } else {
        triangles.push_back({ll, lr, ul});
        triangles.push_back({lr, ur, ul});
      }
    }
  }
  // Cannot fire for perturb <= 0.25: each vertex moves less than half the
  // smallest height (hc / sqrt(2)) of the unperturbed right triangles.
  for (const auto& tri : triangles) {
    if (cross(vertices[tri[1]] - vertices[tri[0]], vertices[tri[2]] - vertices[tri[0]]) <= 0) {
      throw MeshError("grid perturbation inverted a triangle");
    }
  }
  return TriMesh::build(std::move(vertices), std::move(triangles));
}

}  // namespace hopflax
