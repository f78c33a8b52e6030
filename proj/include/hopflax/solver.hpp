#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "hopflax/field.hpp"
#include "hopflax/local_update.hpp"
#include "hopflax/mesh.hpp"
#include "hopflax/metric.hpp"

namespace hopflax {

enum class SolverKind { jacobi, gauss_seidel, adaptive_gs };

std::string_view to_string(SolverKind kind);
/// Accepts "jacobi", "gauss_seidel", "adaptive_gs".
SolverKind parse_solver_kind(std::string_view name);

struct SolverConfig {
  SolverKind kind = SolverKind::adaptive_gs;
  double tol = 1e-8;             // absolute, on the nodal values
  long long max_sweeps = 100000; // adaptive: cap on pops is max_sweeps * #free vertices
  double tol_1d = 1e-10;         // edge minimization for non-quadratic rho
  bool parallel = true;          // OpenMP kernels for Jacobi sweeps and residuals
};

struct SolveStats {
  SolverKind solver = SolverKind::adaptive_gs;
  int n_vertices = 0;
  int n_triangles = 0;
  long long triangle_updates = 0;
  long long sweeps_or_pops = 0;
  double final_residual = 0.0;
  double wall_time_s = 0.0;
  bool converged = false;  // final_residual <= tol
};

struct SolveResult {
  NodalField field;
  SolveStats stats;
};

/// Optional observers, used by tests to check monotone iteration.
struct SolveHooks {
  /// After every full Jacobi / Gauss-Seidel sweep, with the current iterate.
  std::function<void(std::span<const double>)> on_sweep;
  /// On every accepted adaptive Gauss-Seidel update.
  std::function<void(int vertex, double old_value, double new_value)> on_update;
};

// All solvers take the Dirichlet data as a NodalField: every mesh boundary
// vertex must be Dirichlet (point sources may add interior ones), and the
// remaining vertices are the unknowns. Throws std::invalid_argument
// otherwise.

/// Synchronous fixed-point iteration u <- Lambda u from the constant
/// min(g) initial iterate; iterates increase monotonically.
SolveResult solve_jacobi(const TriMesh& mesh, const MetricModel& model, const NodalField& g,
                         const SolverConfig& config, const SolveHooks& hooks = {});

/// In-place sweeps in ascending vertex order from the min(g) iterate, until
/// a sweep changes no value by more than tol.
SolveResult solve_gauss_seidel(const TriMesh& mesh, const MetricModel& model, const NodalField& g,
                               const SolverConfig& config, const SolveHooks& hooks = {});

/// FIFO-driven adaptive Gauss-Seidel from +inf: only neighbors of changed
/// vertices are revisited. Per-vertex values decrease monotonically.
SolveResult solve_adaptive_gs(const TriMesh& mesh, const MetricModel& model, const NodalField& g,
                              const SolverConfig& config, const SolveHooks& hooks = {});

/// Dispatches on config.kind.
SolveResult solve(const TriMesh& mesh, const MetricModel& model, const NodalField& g,
                  const SolverConfig& config, const SolveHooks& hooks = {});

/// max over non-Dirichlet interior vertices of |u - Lambda u|; +inf where
/// exactly one of the two is infinite.
double residual(const TriMesh& mesh, const MetricModel& model, const NodalField& field,
                double tol_1d = 1e-10);

struct ComparisonReport {
  double max_violation = 0.0;  // max(u1 - u2, 0) over all vertices
  SolveResult first, second;
};

/// Solves for g1 <= g2 (same Dirichlet set) and measures how far
/// u1 <= u2 fails. Throws std::invalid_argument if g1 > g2 somewhere.
ComparisonReport compare_boundary_data(const TriMesh& mesh, const MetricModel& model,
                                       const NodalField& g1, const NodalField& g2,
                                       const SolverConfig& config);

/// Flat key=value record: solver, n_vertices, n_triangles, triangle_updates,
/// sweeps_or_pops, final_residual and, if requested, wall_time_s.
void write_stats(const SolveStats& stats, std::ostream& out, bool include_wall_time);

}  // namespace hopflax
