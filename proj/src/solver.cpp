#include "hopflax/solver.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "hopflax/kernels.hpp"
#include "hopflax/text_format.hpp"

namespace hopflax {
namespace {

std::vector<int> free_vertices(const TriMesh& mesh, const NodalField& g) {
  if (g.size() != mesh.num_vertices() || static_cast<int>(g.dirichlet.size()) != g.size()) {
    throw std::invalid_argument("boundary data size does not match the mesh");
  }
  std::vector<int> free;
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    if (g.is_dirichlet(v)) {
      if (!std::isfinite(g.values[v])) {
        throw std::invalid_argument("Dirichlet value at vertex " + std::to_string(v) +
                                    " is not finite");
      }
    } else if (mesh.is_boundary(v)) {
      throw std::invalid_argument("boundary vertex " + std::to_string(v) +
                                  " has no Dirichlet value");
    } else {
      free.push_back(v);
    }
  }
  return free;
}

double min_dirichlet(const NodalField& g) {
  double m = INFINITY;
  for (int v = 0; v < g.size(); ++v) {
    if (g.is_dirichlet(v)) m = std::min(m, g.values[v]);
  }
  return m;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

SolveStats initial_stats(SolverKind kind, const TriMesh& mesh) {
  SolveStats s;
  s.solver = kind;
  s.n_vertices = mesh.num_vertices();
  s.n_triangles = mesh.num_triangles();
  return s;
}

void finish(SolveResult& result, const HopfLaxOperator& op, std::span<const int> free,
            const SolverConfig& config, const Stopwatch& clock) {
  const auto& u = result.field.values;
  result.stats.final_residual =
      config.parallel ? kernels::residual_omp(op, free, u) : kernels::residual_serial(op, free, u);
  result.stats.converged = result.stats.final_residual <= config.tol;
  result.stats.wall_time_s = clock.seconds();
}

void check_config(const SolverConfig& config) {
  if (!(config.tol > 0.0)) throw std::invalid_argument("solver tolerance must be positive");
  if (config.max_sweeps < 1) throw std::invalid_argument("max_sweeps must be >= 1");
  if (!(config.tol_1d > 0.0)) throw std::invalid_argument("tol_1d must be positive");
}

}  // namespace

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::jacobi: return "jacobi";
    case SolverKind::gauss_seidel: return "gauss_seidel";
    case SolverKind::adaptive_gs: return "adaptive_gs";
  }
  return "unknown";
}

SolverKind parse_solver_kind(std::string_view name) {
  if (name == "jacobi") return SolverKind::jacobi;
  if (name == "gauss_seidel") return SolverKind::gauss_seidel;
  if (name == "adaptive_gs") return SolverKind::adaptive_gs;
  throw std::invalid_argument("unknown solver '" + std::string(name) + "'");
}

SolveResult solve_jacobi(const TriMesh& mesh, const MetricModel& model, const NodalField& g,
                         const SolverConfig& config, const SolveHooks& hooks) {
  check_config(config);
  const Stopwatch clock;
  const auto free = free_vertices(mesh, g);
  const HopfLaxOperator op(mesh, model, config.tol_1d);

  SolveResult result{g, initial_stats(SolverKind::jacobi, mesh)};
  auto& current = result.field.values;
  const double start = free.empty() ? 0.0 : min_dirichlet(g);
  for (int v : free) current[v] = start;

  std::vector<double> next = current;
  while (!free.empty() && result.stats.sweeps_or_pops < config.max_sweeps) {
    const auto sweep = config.parallel ? kernels::jacobi_sweep_omp(op, free, current, next)
                                       : kernels::jacobi_sweep_serial(op, free, current, next);
    current.swap(next);
    ++result.stats.sweeps_or_pops;
    result.stats.triangle_updates += sweep.triangle_updates;
    if (hooks.on_sweep) hooks.on_sweep(current);
    if (sweep.max_change <= config.tol) break;
  }
  finish(result, op, free, config, clock);
  return result;
}

SolveResult solve_gauss_seidel(const TriMesh& mesh, const MetricModel& model, const NodalField& g,
                               const SolverConfig& config, const SolveHooks& hooks) {
  check_config(config);
  const Stopwatch clock;
  const auto free = free_vertices(mesh, g);
  const HopfLaxOperator op(mesh, model, config.tol_1d);

  SolveResult result{g, initial_stats(SolverKind::gauss_seidel, mesh)};
  auto& u = result.field.values;
  const double start = free.empty() ? 0.0 : min_dirichlet(g);
  for (int v : free) u[v] = start;

  while (!free.empty() && result.stats.sweeps_or_pops < config.max_sweeps) {
    double max_change = 0.0;
    for (int v : free) {
      const double updated = op.patch_update(u, v);
      max_change = std::max(max_change, kernels::gap(updated, u[v]));
      u[v] = updated;
      result.stats.triangle_updates += op.cost(v);
    }
    ++result.stats.sweeps_or_pops;
    if (hooks.on_sweep) hooks.on_sweep(u);
    if (max_change <= config.tol) break;
  }
  finish(result, op, free, config, clock);
  return result;
}

SolveResult solve_adaptive_gs(const TriMesh& mesh, const MetricModel& model, const NodalField& g,
                              const SolverConfig& config, const SolveHooks& hooks) {
  check_config(config);
  const Stopwatch clock;
  const auto free = free_vertices(mesh, g);
  const HopfLaxOperator op(mesh, model, config.tol_1d);

  SolveResult result{g, initial_stats(SolverKind::adaptive_gs, mesh)};
  auto& u = result.field.values;
  for (int v : free) u[v] = INFINITY;

  std::vector<std::uint8_t> enqueued(mesh.num_vertices(), 0);
  std::deque<int> queue;
  for (int v : free) {
    const auto nb = mesh.neighbors(v);
    if (std::any_of(nb.begin(), nb.end(), [&](int w) { return g.is_dirichlet(w); })) {
      queue.push_back(v);
      enqueued[v] = 1;
    }
  }

  const long long max_pops = config.max_sweeps * static_cast<long long>(free.size());
  while (!queue.empty() && result.stats.sweeps_or_pops < max_pops) {
    const int v = queue.front();
    queue.pop_front();
    enqueued[v] = 0;
    ++result.stats.sweeps_or_pops;

    const double updated = op.patch_update(u, v);
    result.stats.triangle_updates += op.cost(v);
    if (kernels::gap(updated, u[v]) > config.tol) {
      if (hooks.on_update) hooks.on_update(v, u[v], updated);
      u[v] = updated;
      for (int w : mesh.neighbors(v)) {
        if (!g.is_dirichlet(w) && !enqueued[w]) {
          queue.push_back(w);
          enqueued[w] = 1;
        }
      }
    }
  }
  finish(result, op, free, config, clock);
  return result;
}

SolveResult solve(const TriMesh& mesh, const MetricModel& model, const NodalField& g,
                  const SolverConfig& config, const SolveHooks& hooks) {
  switch (config.kind) {
    case SolverKind::jacobi: return solve_jacobi(mesh, model, g, config, hooks);
    case SolverKind::gauss_seidel: return solve_gauss_seidel(mesh, model, g, config, hooks);
    case SolverKind::adaptive_gs: return solve_adaptive_gs(mesh, model, g, config, hooks);
  }
  throw std::invalid_argument("unknown solver kind");
}

double residual(const TriMesh& mesh, const MetricModel& model, const NodalField& field,
                double tol_1d) {
  std::vector<int> free;
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    if (!field.is_dirichlet(v) && !mesh.is_boundary(v)) free.push_back(v);
  }
  const HopfLaxOperator op(mesh, model, tol_1d);
  return kernels::residual_omp(op, free, field.values);
}

ComparisonReport compare_boundary_data(const TriMesh& mesh, const MetricModel& model,
                                       const NodalField& g1, const NodalField& g2,
                                       const SolverConfig& config) {
  if (g1.dirichlet != g2.dirichlet) {
    throw std::invalid_argument("compare_boundary_data: Dirichlet sets differ");
  }
  for (int v = 0; v < g1.size(); ++v) {
    if (g1.is_dirichlet(v) && g1.values[v] > g2.values[v]) {
      throw std::invalid_argument("compare_boundary_data: g1 > g2 at vertex " + std::to_string(v));
    }
  }
  ComparisonReport report{0.0, solve(mesh, model, g1, config), solve(mesh, model, g2, config)};
  const auto& u1 = report.first.field.values;
  const auto& u2 = report.second.field.values;
  for (std::size_t v = 0; v < u1.size(); ++v) {
    if (u1[v] > u2[v]) report.max_violation = std::max(report.max_violation, u1[v] - u2[v]);
  }
  return report;
}

void write_stats(const SolveStats& stats, std::ostream& out, bool include_wall_time) {
  out << "solver=" << to_string(stats.solver) << '\n'
      << "n_vertices=" << stats.n_vertices << '\n'
      << "n_triangles=" << stats.n_triangles << '\n'
      << "triangle_updates=" << stats.triangle_updates << '\n'
      << "sweeps_or_pops=" << stats.sweeps_or_pops << '\n'
      << "final_residual=" << format_double(stats.final_residual) << '\n';
  if (include_wall_time) out << "wall_time_s=" << format_double(stats.wall_time_s) << '\n';
}

}  // namespace hopflax
