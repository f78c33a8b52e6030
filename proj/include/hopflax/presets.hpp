#pragma once

#include <functional>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "hopflax/field.hpp"
#include "hopflax/mesh.hpp"
#include "hopflax/metric.hpp"

namespace hopflax {

/// A fully specified point-source problem on [-0.5, 0.5]^2: mesh, model,
/// Dirichlet data, and the exact solution when one is known.
struct ProblemPreset {
  std::string name;
  GridSpec grid;
  TriMesh mesh;
  MetricModel model;
  NodalField boundary;  // u = 0 at the source, outer square per preset
  int source_vertex = -1;
  std::function<double(const Point&)> exact;  // empty when unknown
};

/// Default grid recipe for presets: perturbed by 0.2 of the cell size, seed 1.
GridSpec preset_grid(int n, double perturb = 0.2, std::uint64_t seed = 1);

/// Identity metric with the exact distance |x|; the outer square carries
/// the exact values.
ProblemPreset preset_point_source_euclid(const GridSpec& grid);

/// Geodesic distance from the origin on the torus immersion, via its Gram
/// matrix. The outer square is pinned to a value that never wins the
/// Hopf-Lax minimum.
ProblemPreset preset_torus(const GridSpec& grid);

/// Minimal time to reach the origin under unit controls plus the drift
/// b(y) = -0.9 sin(4 pi y1) sin(4 pi y2) y/|y|. Outer square as for the torus.
ProblemPreset preset_mintime(const GridSpec& grid);

/// "euclid", "torus" or "mintime".
ProblemPreset make_preset(std::string_view name, const GridSpec& grid);

Eigen::Vector3d torus_immersion(const Point& x);
Eigen::Matrix<double, 3, 2> torus_jacobian(const Point& x);
/// Df(x)^T Df(x).
Matrix2 torus_gram(const Point& x);
MetricModel torus_model();

/// b(0) = 0, the continuous extension.
Vector mintime_drift(const Point& y);
MetricModel mintime_model();

/// "euclid", "diag:a,b" (constant M = diag(a, b)), "torus", "mintime".
MetricModel model_from_name(std::string_view spec);

/// Speed-ratio diagnostic sampled on a (samples x samples) grid over the
/// square, n_dirs directions per point.
double sampled_anisotropy(const MetricModel& model, int samples = 257, int n_dirs = 256);

}  // namespace hopflax
