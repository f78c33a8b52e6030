#include "hopflax/local_update.hpp"

#include <algorithm>
#include <cmath>

#include "hopflax/golden_section.hpp"

namespace hopflax {

double triangle_update_riemannian(const TriangleUpdateInput& in, const Matrix2& a) {
  const bool inf_y = std::isinf(in.uy), inf_z = std::isinf(in.uz);
  if (inf_y && inf_z) return INFINITY;

  const Vector xy = in.x - in.y;
  const Vector xz = in.x - in.z;
  const double len_xy = quadratic_norm(a, xy);
  const double len_xz = quadratic_norm(a, xz);
  if (inf_y) return in.uz + len_xz;
  if (inf_z) return in.uy + len_xy;

  const Vector zy = in.z - in.y;
  const double len_zy = quadratic_norm(a, zy);
  const double slope = (in.uz - in.uy) / len_zy;
  const double cos_y = xy.dot(a * zy) / (len_xy * len_zy);
  const double cos_z = -xz.dot(a * zy) / (len_xz * len_zy);

  if (cos_y <= slope) return in.uy + len_xy;
  if (slope <= -cos_z) return in.uz + len_xz;
  const double radicand = std::max(0.0, (1.0 - cos_y * cos_y) * (1.0 - slope * slope));
  return in.uy + (cos_y * slope + std::sqrt(radicand)) * len_xy;
}

double triangle_update_riemannian(const TriangleUpdateInput& in, const MetricModel& model) {
  const LocalMetric rho = model.freeze(in.x);
  if (!rho.is_quadratic()) {
    throw ModelError("closed-form triangle update needs a Riemannian model, got '" +
                     model.name() + "'");
  }
  return triangle_update_riemannian(in, rho.quadratic_form());
}

double triangle_update_generic(const TriangleUpdateInput& in, const LocalMetric& rho,
                               double tol_1d) {
  const bool inf_y = std::isinf(in.uy), inf_z = std::isinf(in.uz);
  if (inf_y && inf_z) return INFINITY;
  if (inf_y) return in.uz + rho(in.x - in.z);
  if (inf_z) return in.uy + rho(in.x - in.y);

  const Vector edge = in.z - in.y;
  const Vector from_y = in.x - in.y;
  auto phi = [&](double t) { return in.uy + t * (in.uz - in.uy) + rho(from_y - t * edge); };
  return golden_section_minimize(phi, 0.0, 1.0, tol_1d).value;
}

double triangle_update_generic(const TriangleUpdateInput& in, const MetricModel& model,
                               double tol_1d) {
  return triangle_update_generic(in, model.freeze(in.x), tol_1d);
}

double triangle_update(const TriangleUpdateInput& in, const LocalMetric& rho, double tol_1d) {
  return rho.is_quadratic() ? triangle_update_riemannian(in, rho.quadratic_form())
                            : triangle_update_generic(in, rho, tol_1d);
}

namespace {

double patch_minimum(const TriMesh& mesh, const LocalMetric& rho, std::span<const double> values,
                     int v, double tol_1d) {
  double best = INFINITY;
  for (int t : mesh.patch(v)) {
    const Triangle& tri = mesh.triangle(t);
    const int k = tri[0] == v ? 0 : (tri[1] == v ? 1 : 2);
    const int y = tri[(k + 1) % 3], z = tri[(k + 2) % 3];
    const TriangleUpdateInput in{mesh.vertex(v), mesh.vertex(y), mesh.vertex(z), values[y],
                                 values[z]};
    best = std::min(best, triangle_update(in, rho, tol_1d));
  }
  return best;
}

}  // namespace

HopfLaxOperator::HopfLaxOperator(const TriMesh& mesh, const MetricModel& model, double tol_1d)
    : mesh_(&mesh), tol_1d_(tol_1d) {
  local_.reserve(mesh.num_vertices());
  for (const auto& p : mesh.vertices()) local_.push_back(model.freeze(p));
}

double HopfLaxOperator::patch_update(std::span<const double> values, int v) const {
  return patch_minimum(*mesh_, local_[v], values, v, tol_1d_);
}

double hopf_lax_update(const TriMesh& mesh, const MetricModel& model, const NodalField& field,
                       int v, double tol_1d) {
  if (mesh.is_boundary(v) || field.is_dirichlet(v)) return field.values[v];
  return patch_minimum(mesh, model.freeze(mesh.vertex(v)), field.values, v, tol_1d);
}

}  // namespace hopflax
