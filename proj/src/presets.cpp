#include "hopflax/presets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hopflax/text_format.hpp"

namespace hopflax {
namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void require_odd(const GridSpec& grid, const char* preset) {
  if (grid.n < 3 || grid.n % 2 == 0) {
    throw std::invalid_argument(std::string(preset) +
                                " preset needs an odd n >= 3 so a vertex sits at the origin");
  }
}

// Dirichlet data for a point source at the origin vertex: 0 there, and a
// constant on the outer square large enough to stay inactive.
NodalField point_source_data(const TriMesh& mesh, const MetricModel& model, int source) {
  const double rho_upper = estimate_rho_bounds(model, mesh).rho_star_upper;
  const double outer = 2.0 * rho_upper * std::sqrt(2.0);
  NodalField g(mesh.num_vertices());
  for (int v : mesh.boundary_vertices()) g.pin(v, outer);
  g.pin(source, 0.0);
  return g;
}

ProblemPreset assemble(std::string name, const GridSpec& grid, MetricModel model) {
  require_odd(grid, name.c_str());
  TriMesh mesh = generate_grid_mesh(grid);
  const int source = grid_center_vertex(grid.n);
  NodalField g = point_source_data(mesh, model, source);
  return ProblemPreset{std::move(name), grid, std::move(mesh), std::move(model), std::move(g),
                       source, {}};
}

}  // namespace

GridSpec preset_grid(int n, double perturb, std::uint64_t seed) { return {n, perturb, seed}; }

ProblemPreset preset_point_source_euclid(const GridSpec& grid) {
  ProblemPreset p = assemble("euclid", grid, MetricModel::euclidean());
  p.exact = [](const Point& x) { return x.norm(); };
  for (int v : p.mesh.boundary_vertices()) p.boundary.pin(v, p.mesh.vertex(v).norm());
  return p;
}

Eigen::Vector3d torus_immersion(const Point& x) {
  const double r = 5.0 + 4.0 * std::cos(two_pi * x.y());
  return {std::cos(two_pi * x.x()) * r, std::sin(two_pi * x.x()) * r, std::sin(two_pi * x.y())};
}

Eigen::Matrix<double, 3, 2> torus_jacobian(const Point& x) {
  const double c1 = std::cos(two_pi * x.x()), s1 = std::sin(two_pi * x.x());
  const double c2 = std::cos(two_pi * x.y()), s2 = std::sin(two_pi * x.y());
  const double r = 5.0 + 4.0 * c2;
  Eigen::Matrix<double, 3, 2> df;
  df << -two_pi * s1 * r, -two_pi * 4.0 * s2 * c1,  //
      two_pi * c1 * r, -two_pi * 4.0 * s2 * s1,     //
      0.0, two_pi * c2;
  return df;
}

Matrix2 torus_gram(const Point& x) {
  const auto df = torus_jacobian(x);
  return df.transpose() * df;
}

MetricModel torus_model() { return MetricModel(GramRiemannian{torus_gram}, "torus"); }

ProblemPreset preset_torus(const GridSpec& grid) { return assemble("torus", grid, torus_model()); }

Vector mintime_drift(const Point& y) {
  const double len = y.norm();
  if (len == 0.0) return Vector::Zero();
  const double s = -0.9 * std::sin(4.0 * std::numbers::pi * y.x()) *
                   std::sin(4.0 * std::numbers::pi * y.y());
  return (s / len) * y;
}

MetricModel mintime_model() { return MetricModel(Drift{mintime_drift}, "mintime"); }

ProblemPreset preset_mintime(const GridSpec& grid) {
  return assemble("mintime", grid, mintime_model());
}

ProblemPreset make_preset(std::string_view name, const GridSpec& grid) {
  if (name == "euclid") return preset_point_source_euclid(grid);
  if (name == "torus") return preset_torus(grid);
  if (name == "mintime") return preset_mintime(grid);
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

MetricModel model_from_name(std::string_view spec) {
  if (spec == "euclid") return MetricModel::euclidean();
  if (spec == "torus") return torus_model();
  if (spec == "mintime") return mintime_model();
  if (spec.starts_with("diag:")) {
    const auto args = spec.substr(5);
    const auto comma = args.find(',');
    if (comma == std::string_view::npos) {
      throw std::invalid_argument("model 'diag:a,b' needs two comma-separated entries");
    }
    Matrix2 m = Matrix2::Zero();
    m(0, 0) = parse_double(args.substr(0, comma));
    m(1, 1) = parse_double(args.substr(comma + 1));
    return MetricModel::constant_riemannian(m, std::string(spec));
  }
  throw std::invalid_argument("unknown model '" + std::string(spec) + "'");
}

double sampled_anisotropy(const MetricModel& model, int samples, int n_dirs) {
  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(samples) * samples);
  for (int j = 0; j < samples; ++j) {
    for (int i = 0; i < samples; ++i) {
      points.emplace_back(-0.5 + static_cast<double>(i) / (samples - 1),
                          -0.5 + static_cast<double>(j) / (samples - 1));
    }
  }
  return anisotropy_coefficient(estimate_rho_bounds(model, points, n_dirs));
}

}  // namespace hopflax
