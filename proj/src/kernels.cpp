#include "hopflax/kernels.hpp"

#include <algorithm>

namespace hopflax::kernels {

SweepResult jacobi_sweep_serial(const HopfLaxOperator& op, std::span<const int> free,
                                std::span<const double> current, std::span<double> next) {
  SweepResult r;
  for (int v : free) {
    next[v] = op.patch_update(current, v);
    r.max_change = std::max(r.max_change, gap(next[v], current[v]));
    r.triangle_updates += op.cost(v);
  }
  return r;
}

SweepResult jacobi_sweep_omp(const HopfLaxOperator& op, std::span<const int> free,
                             std::span<const double> current, std::span<double> next) {
  double max_change = 0.0;
  long long updates = 0;
  const long long n = static_cast<long long>(free.size());
#pragma omp parallel for schedule(static) reduction(max : max_change) reduction(+ : updates)
  for (long long i = 0; i < n; ++i) {
    const int v = free[i];
    next[v] = op.patch_update(current, v);
    max_change = std::max(max_change, gap(next[v], current[v]));
    updates += op.cost(v);
  }
  return {max_change, updates};
}

double residual_serial(const HopfLaxOperator& op, std::span<const int> free,
                       std::span<const double> values) {
  double r = 0.0;
  for (int v : free) r = std::max(r, gap(values[v], op.patch_update(values, v)));
  return r;
}

double residual_omp(const HopfLaxOperator& op, std::span<const int> free,
                    std::span<const double> values) {
  double r = 0.0;
  const long long n = static_cast<long long>(free.size());
#pragma omp parallel for schedule(static) reduction(max : r)
  for (long long i = 0; i < n; ++i) {
    const int v = free[i];
    r = std::max(r, gap(values[v], op.patch_update(values, v)));
  }
  return r;
}

}  // namespace hopflax::kernels
