#include "hopflax/experiments.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "hopflax/interpolation.hpp"
#include "hopflax/kernels.hpp"
#include "hopflax/text_format.hpp"

namespace hopflax {

double max_abs_difference(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("max_abs_difference: size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, kernels::gap(a[i], b[i]));
  return m;
}

std::vector<ErrorReport> run_convergence_study(const std::string& preset, std::span<const int> ns,
                                               const SolverConfig& config, double perturb,
                                               std::uint64_t seed) {
  if (ns.empty()) throw std::invalid_argument("convergence study needs at least one n");
  if (!std::is_sorted(ns.begin(), ns.end()) ||
      std::adjacent_find(ns.begin(), ns.end()) != ns.end()) {
    throw std::invalid_argument("convergence n-list must be strictly ascending");
  }

  const bool has_exact = static_cast<bool>(make_preset(preset, preset_grid(3)).exact);
  std::span<const int> coarse = ns;
  std::optional<ProblemPreset> reference;
  std::optional<PiecewiseLinearInterpolant> reference_u;
  if (!has_exact) {
    const int n_ref = ns.back();
    coarse = ns.first(ns.size() - 1);
    if (coarse.empty()) {
      throw std::invalid_argument("preset '" + preset +
                                  "' has no exact solution; list a finer reference n");
    }
    const long long nv_ref = 1LL * n_ref * n_ref;
    const long long nv_coarse = 1LL * coarse.back() * coarse.back();
    if (nv_ref < 4 * nv_coarse) {
      throw std::invalid_argument("reference mesh n=" + std::to_string(n_ref) +
                                  " too small: needs at least 4x the vertices of n=" +
                                  std::to_string(coarse.back()));
    }
    reference.emplace(make_preset(preset, preset_grid(n_ref, 0.0, seed)));
    auto solved = solve(reference->mesh, reference->model, reference->boundary, config);
    reference_u.emplace(reference->mesh, std::move(solved.field.values));
  }

  std::vector<ErrorReport> rows;
  for (int n : coarse) {
    const ProblemPreset p = make_preset(preset, preset_grid(n, perturb, seed));
    const SolveResult r = solve(p.mesh, p.model, p.boundary, config);
    double err = 0.0;
    for (int v = 0; v < p.mesh.num_vertices(); ++v) {
      if (p.boundary.is_dirichlet(v)) continue;
      const Point& x = p.mesh.vertex(v);
      const double target = has_exact ? p.exact(x) : (*reference_u)(x);
      err = std::max(err, std::abs(r.field.values[v] - target));
    }
    rows.push_back({preset, n, config.kind, err, r.stats.triangle_updates, r.stats.final_residual});
  }
  return rows;
}

std::vector<ComparisonRow> run_solver_comparison(const ProblemPreset& preset,
                                                 std::span<const SolverKind> solvers,
                                                 const SolverConfig& config) {
  SolverConfig cfg = config;
  cfg.kind = SolverKind::adaptive_gs;
  const SolveResult baseline = solve(preset.mesh, preset.model, preset.boundary, cfg);

  std::vector<ComparisonRow> rows;
  for (SolverKind kind : solvers) {
    cfg.kind = kind;
    const SolveResult r = kind == SolverKind::adaptive_gs
                              ? baseline
                              : solve(preset.mesh, preset.model, preset.boundary, cfg);
    rows.push_back({preset.name, preset.grid.n, kind, r.stats.triangle_updates,
                    r.stats.final_residual,
                    max_abs_difference(r.field.values, baseline.field.values)});
  }
  return rows;
}

void write_convergence_csv(std::span<const ErrorReport> rows, std::ostream& out) {
  out << "preset,n,solver,max_error,triangle_updates,residual\n";
  for (const auto& r : rows) {
    out << r.preset << ',' << r.n << ',' << to_string(r.solver) << ',' << format_double(r.max_error)
        << ',' << r.triangle_updates << ',' << format_double(r.residual) << '\n';
  }
}

void write_comparison_csv(std::span<const ComparisonRow> rows, std::ostream& out) {
  out << "preset,n,solver,triangle_updates,residual,max_diff_vs_adaptive\n";
  for (const auto& r : rows) {
    out << r.preset << ',' << r.n << ',' << to_string(r.solver) << ',' << r.triangle_updates << ','
        << format_double(r.residual) << ',' << format_double(r.max_diff_vs_adaptive) << '\n';
  }
}

void write_solution_csv(const TriMesh& mesh, std::span<const double> values, std::ostream& out) {
  out << "x,y,u\n";
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    const Point& p = mesh.vertex(v);
    out << format_double(p.x()) << ',' << format_double(p.y()) << ',' << format_double(values[v])
        << '\n';
  }
}

}  // namespace hopflax
