#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace hopflax {

using Point = Eigen::Vector2d;
using Vector = Eigen::Vector2d;
using Triangle = std::array<int, 3>;

class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Planar triangulation with vertex patches and boundary classification.
///
/// Immutable after construction. Every triangle is stored with positive
/// signed area; a vertex is a boundary vertex iff it lies on an edge that
/// belongs to exactly one triangle.
class TriMesh {
 public:
  TriMesh() = default;

  /// Validates the input, orients all triangles counter-clockwise and
  /// computes adjacency. Throws MeshError on malformed input.
  static TriMesh build(std::vector<Point> vertices, std::vector<Triangle> triangles);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }

  const Point& vertex(int v) const { return vertices_[v]; }
  const Triangle& triangle(int t) const { return triangles_[t]; }
  std::span<const Point> vertices() const { return vertices_; }
  std::span<const Triangle> triangles() const { return triangles_; }

  /// Triangles incident to v, ascending.
  std::span<const int> patch(int v) const {
    return {patch_index_.data() + patch_offset_[v], patch_index_.data() + patch_offset_[v + 1]};
  }

  /// Vertices sharing an edge with v, ascending.
  std::span<const int> neighbors(int v) const {
    return {neighbor_index_.data() + neighbor_offset_[v],
            neighbor_index_.data() + neighbor_offset_[v + 1]};
  }

  bool is_boundary(int v) const { return on_boundary_[v] != 0; }

  /// Boundary vertices, ascending.
  std::span<const int> boundary_vertices() const { return boundary_vertices_; }

  /// Index of the vertex closest to p (lowest index on ties).
  int nearest_vertex(const Point& p) const;

 private:
  std::vector<Point> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<int> patch_offset_, patch_index_;
  std::vector<int> neighbor_offset_, neighbor_index_;
  std::vector<std::uint8_t> on_boundary_;
  std::vector<int> boundary_vertices_;
};

inline TriMesh build_mesh(std::vector<Point> vertices, std::vector<Triangle> triangles) {
  return TriMesh::build(std::move(vertices), std::move(triangles));
}

struct TriangleShape {
  double h1 = 0.0;  // diameter (longest edge)
  double h0 = 0.0;  // minimal vertex height
};

struct MeshQuality {
  double h = 0.0;      // max triangle diameter
  double theta = 1.0;  // max h1 / h0
  std::vector<TriangleShape> per_triangle;
};

TriangleShape triangle_shape(const Point& a, const Point& b, const Point& c);
MeshQuality mesh_quality(const TriMesh& mesh);

/// Recipe for the perturbed criss-cross grid on [-0.5, 0.5]^2.
struct GridSpec {
  int n = 2;             // vertices per side
  double perturb = 0.0;  // interior displacement, fraction of the cell size
  std::uint64_t seed = 1;
};

/// n*n vertices, row-major from (-0.5, -0.5). Cell (i, j) is split along
/// the diagonal through its lower-left corner when i + j is even and
/// through its lower-right corner otherwise. Interior vertices are moved by
/// an Lcg64-driven offset with each coordinate in
/// [-perturb*hc/sqrt(2), perturb*hc/sqrt(2)], drawn x then y in ascending
/// vertex order. For odd n the centre vertex stays at the origin.
TriMesh generate_grid_mesh(const GridSpec& spec);

/// Index of the vertex at the origin of an odd-n grid.
inline int grid_center_vertex(int n) { return (n / 2) * n + n / 2; }

}  // namespace hopflax
