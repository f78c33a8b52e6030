#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hopflax/presets.hpp"
#include "hopflax/solver.hpp"

namespace hopflax {

struct ErrorReport {
  std::string preset;
  int n = 0;
  SolverKind solver = SolverKind::adaptive_gs;
  double max_error = 0.0;  // max error over the free vertices of the coarse mesh
  long long triangle_updates = 0;
  double residual = 0.0;
};

/// Max nodal error of the solutions on grids n in `ns` (ascending), taken
/// over the free vertices; Dirichlet values are data, not approximations.
///
/// Presets with an exact solution are compared against it on every n.
/// Otherwise the largest n is solved on an unperturbed grid and serves as
/// reference; its piecewise-linear interpolant is compared on the remaining
/// (coarser) n, which need at most a quarter of the reference vertex count.
std::vector<ErrorReport> run_convergence_study(const std::string& preset, std::span<const int> ns,
                                               const SolverConfig& config, double perturb = 0.2,
                                               std::uint64_t seed = 1);

struct ComparisonRow {
  std::string preset;
  int n = 0;
  SolverKind solver = SolverKind::adaptive_gs;
  long long triangle_updates = 0;
  double residual = 0.0;
  double max_diff_vs_adaptive = 0.0;
};

/// Solves one preset with each solver; the adaptive solution is always
/// computed as the baseline for max_diff_vs_adaptive.
std::vector<ComparisonRow> run_solver_comparison(const ProblemPreset& preset,
                                                 std::span<const SolverKind> solvers,
                                                 const SolverConfig& config);

/// preset,n,solver,max_error,triangle_updates,residual
void write_convergence_csv(std::span<const ErrorReport> rows, std::ostream& out);
/// preset,n,solver,triangle_updates,residual,max_diff_vs_adaptive
void write_comparison_csv(std::span<const ComparisonRow> rows, std::ostream& out);
/// x,y,u
void write_solution_csv(const TriMesh& mesh, std::span<const double> values, std::ostream& out);

/// max_v |a[v] - b[v]|, infinite entries comparing equal to themselves.
double max_abs_difference(std::span<const double> a, std::span<const double> b);

}  // namespace hopflax
