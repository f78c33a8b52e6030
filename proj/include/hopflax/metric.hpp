#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>

#include <Eigen/Core>

#include "hopflax/mesh.hpp"

namespace hopflax {

using Matrix2 = Eigen::Matrix2d;

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// rho(x, q) = ||q||_{M(x)^{-1}} for an SPD metric field M.
struct Riemannian {
  std::function<Matrix2(const Point&)> metric;
};

/// rho(x, q)^2 = <q, G(x) q>, G used as given (no inversion).
struct GramRiemannian {
  std::function<Matrix2(const Point&)> gram;
};

/// Speed profile f(x, unit direction), rho(x, q) = ||q|| / f(x, -q/||q||).
struct HjbSpeed {
  std::function<double(const Point&, const Vector&)> speed;
};

/// Drift b(x) with ||b|| < 1 for H(x, p) = ||p|| - <b(x), p> - 1.
struct Drift {
  std::function<Vector(const Point&)> drift;
};

/// Arbitrary rho, trusted by the caller to be positively homogeneous and
/// convex in q. See validate_convex_homogeneous().
struct Custom {
  std::function<double(const Point&, const Vector&)> rho;
};

class MetricModel;

/// rho(x, .) with x fixed. Models with a quadratic rho expose the 2x2
/// matrix A with rho(q)^2 = q^T A q, which enables the closed-form update.
class LocalMetric {
 public:
  double operator()(const Vector& q) const;

  bool is_quadratic() const { return std::holds_alternative<Matrix2>(state_); }
  const Matrix2& quadratic_form() const { return std::get<Matrix2>(state_); }

 private:
  friend class MetricModel;
  struct Deferred {
    const MetricModel* model;
    Point x;
  };
  explicit LocalMetric(Matrix2 a) : state_(a) {}
  explicit LocalMetric(Vector drift) : state_(drift) {}
  explicit LocalMetric(Deferred d) : state_(d) {}

  std::variant<Matrix2, Vector, Deferred> state_;
};

/// Support function of the zero-level set of a convex Hamiltonian.
class MetricModel {
 public:
  using Form = std::variant<Riemannian, GramRiemannian, HjbSpeed, Drift, Custom>;

  MetricModel(Form form, std::string name) : form_(std::move(form)), name_(std::move(name)) {}

  static MetricModel euclidean();
  /// Constant SPD metric M; rho(q) = ||q||_{M^{-1}}.
  static MetricModel constant_riemannian(const Matrix2& m, std::string name = "riemannian");

  const std::string& name() const { return name_; }
  const Form& form() const { return form_; }

  /// True when rho(x, .) is a quadratic norm (Riemannian and Gram forms).
  bool has_closed_form() const {
    return std::holds_alternative<Riemannian>(form_) ||
           std::holds_alternative<GramRiemannian>(form_);
  }

  double rho(const Point& x, const Vector& q) const;

  /// Freezes the x-dependence. The returned object may reference *this.
  LocalMetric freeze(const Point& x) const;

 private:
  Form form_;
  std::string name_;
};

inline double eval_rho(const MetricModel& model, const Point& x, const Vector& q) {
  return model.rho(x, q);
}

/// Throws ModelError unless m is symmetric positive definite.
void require_spd(const Matrix2& m, const char* what);

/// ||q||_{A} = sqrt(q^T A q).
inline double quadratic_norm(const Matrix2& a, const Vector& q) {
  return std::sqrt(std::max(0.0, q.dot(a * q)));
}

struct RhoBounds {
  double rho_star_lower = 0.0;  // min of rho(x, q) over sampled x and unit q
  double rho_star_upper = 0.0;  // max of the same
};

/// Inner estimates of the bounds rho_lower ||q|| <= rho(x, q) <= rho_upper ||q||,
/// sampled at the given points and n_dirs equispaced unit directions.
RhoBounds estimate_rho_bounds(const MetricModel& model, std::span<const Point> points,
                              int n_dirs = 64);
RhoBounds estimate_rho_bounds(const MetricModel& model, const TriMesh& mesh, int n_dirs = 64);

/// rho_upper / rho_lower, i.e. the ratio of maximal to minimal speed.
inline double anisotropy_coefficient(const RhoBounds& b) {
  return b.rho_star_upper / b.rho_star_lower;
}

struct CompatibilityReport {
  bool pass = true;
  int worst_x = -1;  // pair attaining the largest g(x) - g(y) - (rho_lower/theta)|x-y|
  int worst_y = -1;
  double margin = -INFINITY;  // that largest value; pass iff margin <= 0
};

/// Checks g(x) - g(y) <= (rho_lower / theta) |x - y| over all ordered pairs
/// of boundary vertices. `g` is indexed by vertex; only boundary entries
/// are read.
CompatibilityReport check_boundary_compatibility(const TriMesh& mesh, std::span<const double> g,
                                                 const RhoBounds& bounds, double theta);

struct ConvexityReport {
  double worst_homogeneity = 0.0;     // max |rho(tq) - t rho(q)| / (1 + t rho(q))
  double worst_subadditivity = 0.0;   // max rho(q1+q2) - rho(q1) - rho(q2), clipped at 0
  double min_value = INFINITY;        // smallest rho over sampled unit q
};

/// Sampling check of the positive homogeneity and subadditivity of
/// q -> rho(x, q) at the given points. Cannot certify convexity.
ConvexityReport validate_convex_homogeneous(const MetricModel& model,
                                            std::span<const Point> points, int samples_per_point,
                                            std::uint64_t seed);

}  // namespace hopflax
