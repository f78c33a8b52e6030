#include "hopflax/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "hopflax/prng.hpp"

namespace hopflax {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Matrix2 inverse_spd(const Matrix2& m) {
  require_spd(m, "Riemannian metric");
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  Matrix2 inv;
  inv << m(1, 1) / det, -m(0, 1) / det, -m(1, 0) / det, m(0, 0) / det;
  return inv;
}

Vector checked_drift(const Drift& d, const Point& x) {
  const Vector b = d.drift(x);
  if (!(b.norm() < 1.0)) {
    throw ModelError("drift magnitude must be < 1, got " + std::to_string(b.norm()));
  }
  return b;
}

double drift_rho(const Vector& b, const Vector& q) {
  const double len = q.norm();
  if (len == 0.0) return 0.0;
  const double s = b.dot(q) / len;
  return len / (std::sqrt(1.0 - b.squaredNorm() + s * s) - s);
}

double hjb_rho(const HjbSpeed& h, const Point& x, const Vector& q) {
  const double len = q.norm();
  if (len == 0.0) return 0.0;
  const double f = h.speed(x, -q / len);
  if (!(f > 0.0)) throw ModelError("speed must be positive, got " + std::to_string(f));
  return len / f;
}

}  // namespace

void require_spd(const Matrix2& m, const char* what) {
  const double scale = m.cwiseAbs().maxCoeff();
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (!std::isfinite(scale) || std::abs(m(0, 1) - m(1, 0)) > 1e-12 * scale || !(m(0, 0) > 0) ||
      !(det > 0)) {
    throw ModelError(std::string(what) + " is not symmetric positive definite");
  }
}

MetricModel MetricModel::euclidean() {
  return MetricModel(GramRiemannian{[](const Point&) -> Matrix2 { return Matrix2::Identity(); }},
                     "euclid");
}

MetricModel MetricModel::constant_riemannian(const Matrix2& m, std::string name) {
  require_spd(m, "Riemannian metric");
  return MetricModel(Riemannian{[m](const Point&) { return m; }}, std::move(name));
}

double MetricModel::rho(const Point& x, const Vector& q) const {
  return std::visit(
      overloaded{
          [&](const Riemannian& r) { return quadratic_norm(inverse_spd(r.metric(x)), q); },
          [&](const GramRiemannian& g) {
            const Matrix2 a = g.gram(x);
            require_spd(a, "Gram matrix");
            return quadratic_norm(a, q);
          },
          [&](const HjbSpeed& h) { return hjb_rho(h, x, q); },
          [&](const Drift& d) { return drift_rho(checked_drift(d, x), q); },
          [&](const Custom& c) { return c.rho(x, q); },
      },
      form_);
}

LocalMetric MetricModel::freeze(const Point& x) const {
  return std::visit(overloaded{
                        [&](const Riemannian& r) { return LocalMetric(inverse_spd(r.metric(x))); },
                        [&](const GramRiemannian& g) {
                          Matrix2 a = g.gram(x);
                          require_spd(a, "Gram matrix");
                          return LocalMetric(a);
                        },
                        [&](const Drift& d) { return LocalMetric(checked_drift(d, x)); },
                        [&](const auto&) { return LocalMetric(LocalMetric::Deferred{this, x}); },
                    },
                    form_);
}

double LocalMetric::operator()(const Vector& q) const {
  return std::visit(overloaded{
                        [&](const Matrix2& a) { return quadratic_norm(a, q); },
                        [&](const Vector& b) { return drift_rho(b, q); },
                        [&](const Deferred& d) { return d.model->rho(d.x, q); },
                    },
                    state_);
}

RhoBounds estimate_rho_bounds(const MetricModel& model, std::span<const Point> points,
                              int n_dirs) {
  if (n_dirs < 4) throw std::invalid_argument("estimate_rho_bounds: n_dirs must be >= 4");
  std::vector<Vector> dirs;
  dirs.reserve(n_dirs);
  for (int k = 0; k < n_dirs; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / n_dirs;
    dirs.emplace_back(std::cos(angle), std::sin(angle));
  }
  double lo = INFINITY, hi = 0.0;
  const long long np = static_cast<long long>(points.size());
#pragma omp parallel for schedule(static) reduction(min : lo) reduction(max : hi)
  for (long long i = 0; i < np; ++i) {
    const LocalMetric rho = model.freeze(points[i]);
    for (const auto& q : dirs) {
      const double r = rho(q);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  return {lo, hi};
}

RhoBounds estimate_rho_bounds(const MetricModel& model, const TriMesh& mesh, int n_dirs) {
  return estimate_rho_bounds(model, mesh.vertices(), n_dirs);
}

CompatibilityReport check_boundary_compatibility(const TriMesh& mesh, std::span<const double> g,
                                                 const RhoBounds& bounds, double theta) {
  const double slope = bounds.rho_star_lower / theta;
  CompatibilityReport report;
  const auto boundary = mesh.boundary_vertices();
  for (int x : boundary) {
    for (int y : boundary) {
      if (x == y) continue;
      const double m = g[x] - g[y] - slope * (mesh.vertex(x) - mesh.vertex(y)).norm();
      if (m > report.margin) {
        report.margin = m;
        report.worst_x = x;
        report.worst_y = y;
      }
    }
  }
  report.pass = !(report.margin > 0.0);
  return report;
}

ConvexityReport validate_convex_homogeneous(const MetricModel& model,
                                            std::span<const Point> points, int samples_per_point,
                                            std::uint64_t seed) {
  ConvexityReport report;
  Lcg64 rng(seed);
  for (const auto& x : points) {
    for (int s = 0; s < samples_per_point; ++s) {
      const Vector q1(rng.uniform(-1, 1), rng.uniform(-1, 1));
      const Vector q2(rng.uniform(-1, 1), rng.uniform(-1, 1));
      const double t = rng.uniform(0, 10);
      const double r1 = model.rho(x, q1), r2 = model.rho(x, q2);
      report.worst_homogeneity = std::max(
          report.worst_homogeneity, std::abs(model.rho(x, t * q1) - t * r1) / (1.0 + t * r1));
      report.worst_subadditivity =
          std::max(report.worst_subadditivity, model.rho(x, q1 + q2) - r1 - r2);
      if (q1.norm() > 0) report.min_value = std::min(report.min_value, r1 / q1.norm());
    }
  }
  return report;
}

}  // namespace hopflax
