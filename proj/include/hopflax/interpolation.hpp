#pragma once

#include <span>
#include <vector>

#include "hopflax/mesh.hpp"

namespace hopflax {

/// Evaluates the continuous piecewise-linear function with the given nodal
/// values at arbitrary points of the meshed domain. Point location uses a
/// uniform bucket grid over the bounding box.
class PiecewiseLinearInterpolant {
 public:
  PiecewiseLinearInterpolant(const TriMesh& mesh, std::vector<double> values);

  /// Throws std::out_of_range for points outside the mesh (beyond a
  /// relative slack of 1e-9).
  double operator()(const Point& p) const;

 private:
  int locate(const Point& p, Eigen::Vector3d& bary) const;

  const TriMesh* mesh_;
  std::vector<double> values_;
  Point lo_, hi_;
  int cells_x_ = 1, cells_y_ = 1;
  std::vector<int> cell_offset_, cell_triangles_;
};

}  // namespace hopflax
