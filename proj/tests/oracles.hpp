#pragma once

// Independent reference computations for the tests. Nothing here calls the
// closed-form update, the golden-section search, or the model classes.

#include <functional>
#include <vector>

#include <Eigen/Core>

namespace oracles {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// min over k = 0..samples of (1-t) uy + t uz + rho(x - ((1-t) y + t z)),
/// t = k / samples.
double edge_sampling_update(const Vec2& x, const Vec2& y, const Vec2& z, double uy, double uz,
                            const std::function<double(const Vec2&)>& rho, int samples);

/// ||q||_{M^{-1}} by maximizing <p, q> / ||p||_M over `samples` directions
/// p, refined by a local ternary search around the best sample.
double dual_norm_bruteforce(const Mat2& m, const Vec2& q, int samples);

/// ||q||_{M^{-1}} through an LLT factorization of M.
double dual_norm_cholesky(const Mat2& m, const Vec2& q);

/// Support function of {p : |p| - <b, p> = 1} at q, by sampling the level
/// set in polar form p = e / (1 - <b, e>) at `samples` angles.
double drift_support_bruteforce(const Vec2& b, const Vec2& q, int samples);

/// Central differences of f : R^2 -> R^3.
Eigen::Matrix<double, 3, 2> fd_jacobian(const std::function<Eigen::Vector3d(const Vec2&)>& f,
                                        const Vec2& x, double step);

/// Distance from p to the infinite line through a, b.
double point_line_distance(const Vec2& p, const Vec2& a, const Vec2& b);

/// Deterministic xorshift stream for test data, independent of Lcg64.
class TestRng {
 public:
  explicit TestRng(unsigned long long seed) : s_(seed * 2685821657736338717ULL + 1) {}
  double uniform(double lo, double hi);

 private:
  unsigned long long s_;
};

/// Random SPD matrix with eigenvalues in [lo, hi].
Mat2 random_spd(TestRng& rng, double lo, double hi);

}  // namespace oracles
