// hopflax: command-line front end for the Hopf-Lax finite-element solver.
//
// Subcommands: gen-mesh, solve, convergence, compare-solvers, check-compat.
// All numeric output is locale-independent; key=value records and CSV go
// to stdout unless an output file is given.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hopflax/experiments.hpp"
#include "hopflax/mesh_io.hpp"
#include "hopflax/presets.hpp"
#include "hopflax/solver.hpp"
#include "hopflax/text_format.hpp"

namespace {

using namespace hopflax;

constexpr const char* kFormats = R"(
Output formats:
  mesh file         line 1 'nv nt', nv lines 'x y', nt lines 'i j k' (0-based), '#' comments
  solution CSV      x,y,u
  stats record      key=value lines: solver, n_vertices, n_triangles, triangle_updates,
                    sweeps_or_pops, final_residual [, wall_time_s with --with-timing]
  convergence CSV   preset,n,solver,max_error,triangle_updates,residual
  comparison CSV    preset,n,solver,triangle_updates,residual,max_diff_vs_adaptive

Models: euclid | diag:a,b | torus | mintime
Boundary data (--g-spec): zero | const:c | linear:a,b,c (a*x+b*y+c) | radial (|x|) | spike:i,c
  (spike: c at boundary vertex i, 0 elsewhere)
Exit codes: solve 0 iff final_residual <= tol; check-compat 0 pass, 2 violation.)";

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_double(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

// Boundary values for every vertex (only boundary entries are meaningful).
std::vector<double> boundary_values(const TriMesh& mesh, const std::string& spec) {
  std::vector<double> g(mesh.num_vertices(), 0.0);
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::vector<double> args =
      colon == std::string::npos ? std::vector<double>{} : parse_list(spec.substr(colon + 1));
  auto need = [&](std::size_t k) {
    if (args.size() != k) {
      throw std::invalid_argument("g-spec '" + spec + "' expects " + std::to_string(k) +
                                  " arguments");
    }
  };
  if (kind == "zero") {
    need(0);
  } else if (kind == "const") {
    need(1);
    std::fill(g.begin(), g.end(), args[0]);
  } else if (kind == "linear") {
    need(3);
    for (int v = 0; v < mesh.num_vertices(); ++v) {
      g[v] = args[0] * mesh.vertex(v).x() + args[1] * mesh.vertex(v).y() + args[2];
    }
  } else if (kind == "radial") {
    need(0);
    for (int v = 0; v < mesh.num_vertices(); ++v) g[v] = mesh.vertex(v).norm();
  } else if (kind == "spike") {
    need(2);
    const int v = static_cast<int>(args[0]);
    if (v < 0 || v >= mesh.num_vertices() || !mesh.is_boundary(v)) {
      throw std::invalid_argument("spike vertex must be a boundary vertex");
    }
    g[v] = args[1];
  } else {
    throw std::invalid_argument("unknown g-spec '" + spec + "'");
  }
  return g;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.emplace(path, std::ios::binary);
      if (!*file_) throw std::runtime_error("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? static_cast<std::ostream&>(*file_) : std::cout; }

 private:
  std::optional<std::ofstream> file_;
};

void print_kv(const std::string& key, const std::string& value) {
  std::cout << key << '=' << value << '\n';
}

struct GenMeshArgs {
  int n = 0;
  double perturb = 0.0;
  std::uint64_t seed = 1;
  std::string out;
};

int run_gen_mesh(const GenMeshArgs& a) {
  const TriMesh mesh = generate_grid_mesh({a.n, a.perturb, a.seed});
  Output out(a.out);
  write_mesh(mesh, out.stream());
  if (!a.out.empty()) {
    const MeshQuality q = mesh_quality(mesh);
    print_kv("n_vertices", std::to_string(mesh.num_vertices()));
    print_kv("n_triangles", std::to_string(mesh.num_triangles()));
    print_kv("h", format_double(q.h));
    print_kv("theta", format_double(q.theta));
  }
  return 0;
}

struct SolveArgs {
  std::string preset;
  int n = 23;
  double perturb = 0.2;
  std::uint64_t seed = 1;
  std::string mesh_path;
  std::string model = "euclid";
  std::string g_spec = "zero";
  std::string source;
  std::string solver = "adaptive_gs";
  double tol = 1e-8;
  long long max_sweeps = 100000;
  std::string out_solution;
  std::string out_stats;
  bool with_timing = false;
  bool serial = false;
};

int run_solve(const SolveArgs& a) {
  SolverConfig config;
  config.kind = parse_solver_kind(a.solver);
  config.tol = a.tol;
  config.max_sweeps = a.max_sweeps;
  config.parallel = !a.serial;

  std::optional<ProblemPreset> preset;
  std::optional<TriMesh> own_mesh;
  std::optional<MetricModel> own_model;
  NodalField g;
  if (!a.preset.empty()) {
    preset.emplace(make_preset(a.preset, preset_grid(a.n, a.perturb, a.seed)));
    g = preset->boundary;
    print_kv("preset", preset->name);
  } else {
    own_mesh.emplace(load_mesh(a.mesh_path));
    own_model.emplace(model_from_name(a.model));
    const auto values = boundary_values(*own_mesh, a.g_spec);
    g = NodalField(own_mesh->num_vertices());
    for (int v : own_mesh->boundary_vertices()) g.pin(v, values[v]);
    if (!a.source.empty()) {
      const auto xy = parse_list(a.source);
      if (xy.size() != 2) throw std::invalid_argument("--source expects x,y");
      g.pin(own_mesh->nearest_vertex(Point(xy[0], xy[1])), 0.0);
    }
    print_kv("model", own_model->name());
  }
  const TriMesh& mesh = preset ? preset->mesh : *own_mesh;
  const MetricModel& model = preset ? preset->model : *own_model;

  print_kv("theta", format_double(mesh_quality(mesh).theta));
  print_kv("anisotropy", format_double(preset ? sampled_anisotropy(model)
                                              : anisotropy_coefficient(
                                                    estimate_rho_bounds(model, mesh))));

  const SolveResult r = solve(mesh, model, g, config);
  write_stats(r.stats, std::cout, a.with_timing);
  if (!a.out_stats.empty()) {
    Output out(a.out_stats);
    write_stats(r.stats, out.stream(), a.with_timing);
  }
  if (!a.out_solution.empty()) {
    Output out(a.out_solution);
    write_solution_csv(mesh, r.field.values, out.stream());
  }
  return r.stats.converged ? 0 : 1;
}

struct ConvergenceArgs {
  std::string preset;
  std::string n_list = "23,45,91";
  std::string solver = "adaptive_gs";
  double tol = 1e-8;
  double perturb = 0.2;
  std::uint64_t seed = 1;
  std::string out;
};

int run_convergence(const ConvergenceArgs& a) {
  SolverConfig config;
  config.kind = parse_solver_kind(a.solver);
  config.tol = a.tol;
  std::vector<int> ns;
  for (double n : parse_list(a.n_list)) ns.push_back(static_cast<int>(n));
  const auto rows = run_convergence_study(a.preset, ns, config, a.perturb, a.seed);
  Output out(a.out);
  write_convergence_csv(rows, out.stream());
  return 0;
}

struct CompareArgs {
  std::string preset;
  int n = 23;
  double perturb = 0.2;
  std::uint64_t seed = 1;
  std::string solvers = "jacobi,gauss_seidel,adaptive_gs";
  double tol = 1e-8;
  std::string out;
};

int run_compare(const CompareArgs& a) {
  SolverConfig config;
  config.tol = a.tol;
  std::vector<SolverKind> kinds;
  std::string_view rest = a.solvers;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    kinds.push_back(parse_solver_kind(rest.substr(0, comma)));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }
  const auto preset = make_preset(a.preset, preset_grid(a.n, a.perturb, a.seed));
  const auto rows = run_solver_comparison(preset, kinds, config);
  Output out(a.out);
  write_comparison_csv(rows, out.stream());
  return 0;
}

struct CompatArgs {
  std::string mesh_path;
  std::string g_spec = "zero";
  std::string model = "euclid";
  int n_dirs = 64;
};

int run_check_compat(const CompatArgs& a) {
  const TriMesh mesh = load_mesh(a.mesh_path);
  const MetricModel model = model_from_name(a.model);
  const auto g = boundary_values(mesh, a.g_spec);
  const RhoBounds bounds = estimate_rho_bounds(model, mesh, a.n_dirs);
  const double theta = mesh_quality(mesh).theta;
  const CompatibilityReport rep = check_boundary_compatibility(mesh, g, bounds, theta);
  print_kv("pass", rep.pass ? "1" : "0");
  print_kv("rho_lower", format_double(bounds.rho_star_lower));
  print_kv("theta", format_double(theta));
  print_kv("margin", format_double(rep.margin));
  print_kv("worst_x", std::to_string(rep.worst_x));
  print_kv("worst_y", std::to_string(rep.worst_y));
  return rep.pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hopf-Lax finite-element solver for static Hamilton-Jacobi equations"};
  app.footer(kFormats);
  app.require_subcommand(1);

  GenMeshArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-mesh", "Write a perturbed criss-cross grid mesh");
  gen_cmd->add_option("--n", gen.n, "Vertices per side")->required()->check(CLI::Range(2, 1 << 15));
  gen_cmd->add_option("--perturb", gen.perturb, "Interior displacement / cell size")
      ->check(CLI::Range(0.0, 0.25));
  gen_cmd->add_option("--seed", gen.seed, "Perturbation seed");
  gen_cmd->add_option("--out", gen.out, "Mesh file (stdout if omitted)");

  SolveArgs sol;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a preset or a mesh + model problem");
  auto* preset_opt = solve_cmd->add_option("--preset", sol.preset, "euclid | torus | mintime")
                         ->check(CLI::IsMember({"euclid", "torus", "mintime"}));
  solve_cmd->add_option("--n", sol.n, "Preset grid size (odd)")->check(CLI::Range(3, 1 << 15));
  solve_cmd->add_option("--perturb", sol.perturb, "Preset grid perturbation")
      ->check(CLI::Range(0.0, 0.25));
  solve_cmd->add_option("--seed", sol.seed, "Preset grid seed");
  auto* mesh_opt = solve_cmd->add_option("--mesh", sol.mesh_path, "Mesh file")
                       ->check(CLI::ExistingFile);
  solve_cmd->add_option("--model", sol.model, "Model for --mesh runs")->needs(mesh_opt);
  solve_cmd->add_option("--g-spec", sol.g_spec, "Boundary data for --mesh runs")->needs(mesh_opt);
  solve_cmd->add_option("--source", sol.source, "Point source x,y (u=0) for --mesh runs")
      ->needs(mesh_opt);
  preset_opt->excludes(mesh_opt);
  solve_cmd->add_option("--solver", sol.solver, "jacobi | gauss_seidel | adaptive_gs")
      ->check(CLI::IsMember({"jacobi", "gauss_seidel", "adaptive_gs"}));
  solve_cmd->add_option("--tol", sol.tol, "Absolute tolerance")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--max-sweeps", sol.max_sweeps, "Sweep cap")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--out-solution", sol.out_solution, "x,y,u CSV");
  solve_cmd->add_option("--out-stats", sol.out_stats, "Stats key=value record");
  solve_cmd->add_flag("--with-timing", sol.with_timing, "Include wall_time_s in the stats");
  solve_cmd->add_flag("--serial", sol.serial, "Use the serial reference kernels");

  ConvergenceArgs conv;
  auto* conv_cmd = app.add_subcommand("convergence", "Error versus mesh size");
  conv_cmd->add_option("--preset", conv.preset)->required()->check(
      CLI::IsMember({"euclid", "torus", "mintime"}));
  conv_cmd->add_option("--n-list", conv.n_list, "Ascending odd sizes, comma-separated");
  conv_cmd->add_option("--solver", conv.solver)->check(
      CLI::IsMember({"jacobi", "gauss_seidel", "adaptive_gs"}));
  conv_cmd->add_option("--tol", conv.tol)->check(CLI::PositiveNumber);
  conv_cmd->add_option("--perturb", conv.perturb)->check(CLI::Range(0.0, 0.25));
  conv_cmd->add_option("--seed", conv.seed);
  conv_cmd->add_option("--out", conv.out, "CSV file (stdout if omitted)");

  CompareArgs cmp;
  auto* cmp_cmd = app.add_subcommand("compare-solvers", "Update counts of the three solvers");
  cmp_cmd->add_option("--preset", cmp.preset)->required()->check(
      CLI::IsMember({"euclid", "torus", "mintime"}));
  cmp_cmd->add_option("--n", cmp.n)->check(CLI::Range(3, 1 << 15));
  cmp_cmd->add_option("--perturb", cmp.perturb)->check(CLI::Range(0.0, 0.25));
  cmp_cmd->add_option("--seed", cmp.seed);
  cmp_cmd->add_option("--solvers", cmp.solvers, "Comma-separated solver list");
  cmp_cmd->add_option("--tol", cmp.tol)->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--out", cmp.out, "CSV file (stdout if omitted)");

  CompatArgs compat;
  auto* compat_cmd = app.add_subcommand("check-compat", "Boundary-data compatibility diagnostic");
  compat_cmd->add_option("--mesh", compat.mesh_path)->required()->check(CLI::ExistingFile);
  compat_cmd->add_option("--g-spec", compat.g_spec);
  compat_cmd->add_option("--model", compat.model);
  compat_cmd->add_option("--n-dirs", compat.n_dirs)->check(CLI::Range(4, 1 << 20));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) return run_gen_mesh(gen);
    if (*solve_cmd) {
      if (sol.preset.empty() && sol.mesh_path.empty()) {
        std::cerr << "solve: need --preset or --mesh\n";
        return 1;
      }
      return run_solve(sol);
    }
    if (*conv_cmd) return run_convergence(conv);
    if (*cmp_cmd) return run_compare(cmp);
    if (*compat_cmd) return run_check_compat(compat);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
