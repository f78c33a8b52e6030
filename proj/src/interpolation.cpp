#include "hopflax/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hopflax {

PiecewiseLinearInterpolant::PiecewiseLinearInterpolant(const TriMesh& mesh,
                                                       std::vector<double> values)
    : mesh_(&mesh), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != mesh.num_vertices()) {
    throw std::invalid_argument("interpolant: value count does not match the mesh");
  }
  lo_ = hi_ = mesh.vertex(0);
  for (const auto& p : mesh.vertices()) {
    lo_ = lo_.cwiseMin(p);
    hi_ = hi_.cwiseMax(p);
  }
  const int side = std::max(1, static_cast<int>(std::sqrt(mesh.num_triangles() / 2.0)));
  cells_x_ = cells_y_ = side;

  auto cell_range = [&](double a, double b, double lo, double hi, int cells) {
    const double w = (hi - lo) / cells;
    const int i0 = std::clamp(static_cast<int>((a - lo) / w), 0, cells - 1);
    const int i1 = std::clamp(static_cast<int>((b - lo) / w), 0, cells - 1);
    return std::pair{i0, i1};
  };

  std::vector<std::pair<int, int>> entries;  // (cell, triangle)
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangle(t);
    Point a = mesh.vertex(tri[0]), b = a;
    for (int k = 1; k < 3; ++k) {
      a = a.cwiseMin(mesh.vertex(tri[k]));
      b = b.cwiseMax(mesh.vertex(tri[k]));
    }
    const auto [x0, x1] = cell_range(a.x(), b.x(), lo_.x(), hi_.x(), cells_x_);
    const auto [y0, y1] = cell_range(a.y(), b.y(), lo_.y(), hi_.y(), cells_y_);
    for (int j = y0; j <= y1; ++j) {
      for (int i = x0; i <= x1; ++i) entries.emplace_back(j * cells_x_ + i, t);
    }
  }
  std::sort(entries.begin(), entries.end());
  cell_offset_.assign(cells_x_ * cells_y_ + 1, 0);
  for (const auto& [c, _] : entries) ++cell_offset_[c + 1];
  for (std::size_t c = 0; c + 1 < cell_offset_.size(); ++c) cell_offset_[c + 1] += cell_offset_[c];
  cell_triangles_.reserve(entries.size());
  for (const auto& [_, t] : entries) cell_triangles_.push_back(t);
}

int PiecewiseLinearInterpolant::locate(const Point& p, Eigen::Vector3d& bary) const {
  const double wx = (hi_.x() - lo_.x()) / cells_x_;
  const double wy = (hi_.y() - lo_.y()) / cells_y_;
  const int i = std::clamp(static_cast<int>(std::floor((p.x() - lo_.x()) / wx)), 0, cells_x_ - 1);
  const int j = std::clamp(static_cast<int>(std::floor((p.y() - lo_.y()) / wy)), 0, cells_y_ - 1);
  const int cell = j * cells_x_ + i;

  int best = -1;
  double best_min = -INFINITY;
  for (int k = cell_offset_[cell]; k < cell_offset_[cell + 1]; ++k) {
    const int t = cell_triangles_[k];
    const auto& tri = mesh_->triangle(t);
    const Point& a = mesh_->vertex(tri[0]);
    const Vector e1 = mesh_->vertex(tri[1]) - a, e2 = mesh_->vertex(tri[2]) - a, d = p - a;
    const double det = e1.x() * e2.y() - e1.y() * e2.x();
    const double l1 = (d.x() * e2.y() - d.y() * e2.x()) / det;
    const double l2 = (e1.x() * d.y() - e1.y() * d.x()) / det;
    const Eigen::Vector3d l(1.0 - l1 - l2, l1, l2);
    if (l.minCoeff() > best_min) {
      best_min = l.minCoeff();
      best = t;
      bary = l;
    }
  }
  if (best < 0 || best_min < -1e-9) return -1;
  return best;
}

double PiecewiseLinearInterpolant::operator()(const Point& p) const {
  Eigen::Vector3d bary;
  const int t = locate(p, bary);
  if (t < 0) {
    throw std::out_of_range("interpolant: point (" + std::to_string(p.x()) + ", " +
                            std::to_string(p.y()) + ") is outside the mesh");
  }
  const auto& tri = mesh_->triangle(t);
  return bary[0] * values_[tri[0]] + bary[1] * values_[tri[1]] + bary[2] * values_[tri[2]];
}

}  // namespace hopflax
