#include <benchmark/benchmark.h>

#include <vector>

#include "hopflax/kernels.hpp"
#include "hopflax/presets.hpp"

using namespace hopflax;

namespace {

struct Fixture {
  ProblemPreset preset;
  HopfLaxOperator op;
  std::vector<int> free;
  std::vector<double> current, next;

  explicit Fixture(int n)
      : preset(make_preset("torus", preset_grid(n))), op(preset.mesh, preset.model) {
    for (int v = 0; v < preset.mesh.num_vertices(); ++v)
      if (!preset.boundary.is_dirichlet(v)) free.push_back(v);
    current = preset.boundary.values;
    for (int v : free) current[v] = 0.0;
    next = current;
  }
};

template <bool Parallel>
void BM_JacobiSweep(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const auto r = Parallel ? kernels::jacobi_sweep_omp(f.op, f.free, f.current, f.next)
                            : kernels::jacobi_sweep_serial(f.op, f.free, f.current, f.next);
    benchmark::DoNotOptimize(r.max_change);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(f.free.size()));
}

template <bool Parallel>
void BM_Residual(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const double r = Parallel ? kernels::residual_omp(f.op, f.free, f.current)
                              : kernels::residual_serial(f.op, f.free, f.current);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(f.free.size()));
}

}  // namespace

BENCHMARK(BM_JacobiSweep<false>)->Name("jacobi_sweep/serial")->Arg(91)->Arg(181)->Arg(361);
BENCHMARK(BM_JacobiSweep<true>)->Name("jacobi_sweep/omp")->Arg(91)->Arg(181)->Arg(361);
BENCHMARK(BM_Residual<false>)->Name("residual/serial")->Arg(91)->Arg(181)->Arg(361);
BENCHMARK(BM_Residual<true>)->Name("residual/omp")->Arg(91)->Arg(181)->Arg(361);

BENCHMARK_MAIN();
