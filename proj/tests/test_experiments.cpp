#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "hopflax/experiments.hpp"
#include "hopflax/interpolation.hpp"
#include "hopflax/presets.hpp"
#include "oracles.hpp"

using namespace hopflax;

TEST_CASE("presets: shared structure") {
  for (const char* name : {"euclid", "torus", "mintime"}) {
    CAPTURE(name);
    const ProblemPreset p = make_preset(name, preset_grid(23));
    CHECK(p.name == name);
    CHECK(p.source_vertex == grid_center_vertex(23));
    CHECK(p.mesh.vertex(p.source_vertex) == Point(0, 0));
    CHECK(p.boundary.is_dirichlet(p.source_vertex));
    CHECK(p.boundary.values[p.source_vertex] == 0.0);
    for (int v : p.mesh.boundary_vertices()) CHECK(p.boundary.is_dirichlet(v));
  }
  CHECK_THROWS_AS(make_preset("euclid", preset_grid(22)), std::invalid_argument);
  CHECK_THROWS_AS(make_preset("sphere", preset_grid(23)), std::invalid_argument);
}

TEST_CASE("euclid preset carries exact outer data") {
  const ProblemPreset p = make_preset("euclid", preset_grid(11));
  REQUIRE(p.exact);
  for (int v : p.mesh.boundary_vertices())
    CHECK(p.boundary.values[v] == doctest::Approx(p.mesh.vertex(v).norm()).epsilon(1e-15));
}

TEST_CASE("torus preset: symmetric solution on the unperturbed grid") {
  const int n = 23;
  const ProblemPreset p = make_preset("torus", preset_grid(n, 0.0));
  SolverConfig cfg;
  cfg.tol = 1e-12;
  const SolveResult r = solve(p.mesh, p.model, p.boundary, cfg);
  REQUIRE(r.stats.converged);
  // The unperturbed criss-cross grid and the torus metric are both
  // symmetric under x1 -> -x1 and x2 -> -x2.
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double u = r.field.values[j * n + i];
      worst = std::max(worst, std::abs(u - r.field.values[j * n + (n - 1 - i)]));
      worst = std::max(worst, std::abs(u - r.field.values[(n - 1 - j) * n + i]));
    }
  }
  CHECK(worst <= 1e-9);
  for (int v = 0; v < p.mesh.num_vertices(); ++v) CHECK(std::isfinite(r.field.values[v]));
}

TEST_CASE("torus metric is SPD at every vertex") {
  const ProblemPreset p = make_preset("torus", preset_grid(23));
  for (const Point& x : p.mesh.vertices()) CHECK_NOTHROW(require_spd(torus_gram(x), "torus"));
}

TEST_CASE("min-time drift") {
  CHECK(mintime_drift({0, 0}) == Vector(0, 0));
  CHECK(mintime_drift({0.25, 0.25}).norm() < 1e-15);
  const Vector b = mintime_drift({0.125, 0.125});
  CHECK(b.norm() == doctest::Approx(0.9).epsilon(1e-14));
  CHECK(b.x() < 0.0);

  oracles::TestRng rng(41);
  const MetricModel m = mintime_model();
  for (int k = 0; k < 500; ++k) {
    const Point x(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5));
    const Vector q(rng.uniform(-1, 1), rng.uniform(-1, 1));
    REQUIRE(mintime_drift(x).norm() <= 0.9 + 1e-15);
    const double r = m.rho(x, q);
    REQUIRE(r >= q.norm() / 1.9 - 1e-14);
    REQUIRE(r <= q.norm() / 0.1 + 1e-12);
  }
}

TEST_CASE("sampled anisotropy") {
  CHECK(sampled_anisotropy(MetricModel::euclidean(), 9, 16) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sampled_anisotropy(mintime_model()) == doctest::Approx(19.0).epsilon(1e-6));
}

TEST_CASE("model_from_name") {
  CHECK(model_from_name("euclid").name() == "euclid");
  CHECK(model_from_name("diag:4,1").rho({0, 0}, {1, 0}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(model_from_name("torus").has_closed_form());
  CHECK_FALSE(model_from_name("mintime").has_closed_form());
  CHECK_THROWS_AS(model_from_name("diag:1"), std::invalid_argument);
  CHECK_THROWS_AS(model_from_name("riemann"), std::invalid_argument);
}

TEST_CASE("presets are deterministic") {
  const ProblemPreset a = make_preset("mintime", preset_grid(23));
  const ProblemPreset b = make_preset("mintime", preset_grid(23));
  const SolveResult ra = solve(a.mesh, a.model, a.boundary, {});
  const SolveResult rb = solve(b.mesh, b.model, b.boundary, {});
  CHECK(ra.field.values == rb.field.values);
  CHECK(ra.stats.triangle_updates == rb.stats.triangle_updates);
}

TEST_CASE("interpolant reproduces affine functions") {
  const TriMesh m = generate_grid_mesh({9, 0.2, 5});
  std::vector<double> vals;
  auto f = [](const Point& p) { return 1.5 - 2.0 * p.x() + 0.25 * p.y(); };
  for (const Point& p : m.vertices()) vals.push_back(f(p));
  const PiecewiseLinearInterpolant interp(m, vals);
  oracles::TestRng rng(42);
  for (int k = 0; k < 500; ++k) {
    const Point p(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5));
    REQUIRE(interp(p) == doctest::Approx(f(p)).epsilon(1e-13));
  }
  for (const Point& p : m.vertices()) CHECK(interp(p) == doctest::Approx(f(p)).epsilon(1e-14));
  CHECK_THROWS_AS(interp(Point(0.7, 0.0)), std::out_of_range);
}

TEST_CASE("convergence study") {
  const int ns[] = {11, 21};
  SolverConfig cfg;
  const auto rows = run_convergence_study("euclid", ns, cfg);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].n == 11);
  CHECK(rows[1].max_error < rows[0].max_error);
  for (const auto& r : rows) CHECK(r.residual <= cfg.tol);

  const int with_ref[] = {9, 37};
  const auto ref_rows = run_convergence_study("torus", with_ref, cfg);
  REQUIRE(ref_rows.size() == 1);
  CHECK(ref_rows[0].n == 9);
  CHECK(ref_rows[0].max_error > 0.0);

  // Errors of a reference-based study fall under refinement.
  const int mintime_ns[] = {11, 21, 45};
  const auto mt = run_convergence_study("mintime", mintime_ns, cfg);
  REQUIRE(mt.size() == 2);
  CHECK(mt[1].max_error < mt[0].max_error);

  const int too_close[] = {11, 13};
  CHECK_THROWS_AS(run_convergence_study("torus", too_close, cfg), std::invalid_argument);
  const int unsorted[] = {21, 11};
  CHECK_THROWS_AS(run_convergence_study("euclid", unsorted, cfg), std::invalid_argument);

  std::ostringstream csv;
  write_convergence_csv(rows, csv);
  CHECK(csv.str().rfind("preset,n,solver,max_error,triangle_updates,residual\n", 0) == 0);
}

TEST_CASE("solver comparison rows") {
  const ProblemPreset p = make_preset("torus", preset_grid(11));
  const SolverKind kinds[] = {SolverKind::jacobi, SolverKind::gauss_seidel, SolverKind::adaptive_gs};
  const auto rows = run_solver_comparison(p, kinds, {});
  REQUIRE(rows.size() == 3);
  CHECK(rows[2].max_diff_vs_adaptive == 0.0);
  for (const auto& r : rows) CHECK(r.max_diff_vs_adaptive <= 2e-8);
  std::ostringstream csv;
  write_comparison_csv(rows, csv);
  CHECK(csv.str().rfind("preset,n,solver,triangle_updates,residual,max_diff_vs_adaptive\n", 0) == 0);
}

TEST_CASE("max_abs_difference") {
  const std::vector<double> a{1.0, INFINITY, 3.0}, b{1.5, INFINITY, 2.0};
  CHECK(max_abs_difference(a, b) == 1.0);
}
