#pragma once

#include <span>
#include <vector>

#include "hopflax/field.hpp"
#include "hopflax/mesh.hpp"
#include "hopflax/metric.hpp"

namespace hopflax {

/// One triangle of the patch of x: [y, z] is the edge opposite to x.
/// uy / uz may be +inf.
struct TriangleUpdateInput {
  Point x, y, z;
  double uy = 0.0;
  double uz = 0.0;
};

/// min over w in [y, z] of u(w) + ||x - w||_A, u affine on [y, z], in
/// closed form. `a` is the quadratic form of rho frozen at x
/// (M(x)^{-1} for a Riemannian metric, G(x) for a Gram metric).
double triangle_update_riemannian(const TriangleUpdateInput& in, const Matrix2& a);
double triangle_update_riemannian(const TriangleUpdateInput& in, const MetricModel& model);

/// Same minimization for any rho(x, .), by golden-section search on the
/// edge parameter. Result within tol_1d * (1 + |value|) of the minimum.
double triangle_update_generic(const TriangleUpdateInput& in, const LocalMetric& rho,
                               double tol_1d);
double triangle_update_generic(const TriangleUpdateInput& in, const MetricModel& model,
                               double tol_1d);

/// Closed form when rho is quadratic, golden-section search otherwise.
double triangle_update(const TriangleUpdateInput& in, const LocalMetric& rho, double tol_1d);

/// The Hopf-Lax operator on a fixed mesh and model. The metric is frozen
/// once per vertex at construction; references to mesh and model are kept.
class HopfLaxOperator {
 public:
  HopfLaxOperator(const TriMesh& mesh, const MetricModel& model, double tol_1d = 1e-10);

  const TriMesh& mesh() const { return *mesh_; }
  double tol_1d() const { return tol_1d_; }

  /// min over the patch of v of the per-triangle updates. Does not look at
  /// whether v is Dirichlet; callers decide which vertices are free.
  double patch_update(std::span<const double> values, int v) const;

  /// Number of triangle updates performed by patch_update(., v).
  int cost(int v) const { return static_cast<int>(mesh_->patch(v).size()); }

 private:
  const TriMesh* mesh_;
  std::vector<LocalMetric> local_;
  double tol_1d_;
};

/// (Lambda u)(v): the patch minimum for free interior vertices, the stored
/// value on the mesh boundary and on Dirichlet vertices.
double hopf_lax_update(const TriMesh& mesh, const MetricModel& model, const NodalField& field,
                       int v, double tol_1d = 1e-10);

}  // namespace hopflax
