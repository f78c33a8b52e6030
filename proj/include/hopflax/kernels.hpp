#pragma once

#include <cmath>
#include <span>

#include "hopflax/local_update.hpp"

namespace hopflax::kernels {

// Data-parallel inner loops of the solvers. Each kernel comes as an OpenMP
// version and a serial reference; both produce bit-identical results since
// every vertex is computed independently and only max/sum reductions are
// used.

/// |a - b| with equal values (including +inf == +inf) giving 0.
inline double gap(double a, double b) { return a == b ? 0.0 : std::abs(a - b); }

struct SweepResult {
  double max_change = 0.0;
  long long triangle_updates = 0;
};

/// next[v] = (Lambda current)(v) for v in `free`; other entries of `next`
/// are left untouched.
SweepResult jacobi_sweep_serial(const HopfLaxOperator& op, std::span<const int> free,
                                std::span<const double> current, std::span<double> next);
SweepResult jacobi_sweep_omp(const HopfLaxOperator& op, std::span<const int> free,
                             std::span<const double> current, std::span<double> next);

/// max over v in `free` of |u(v) - (Lambda u)(v)|.
double residual_serial(const HopfLaxOperator& op, std::span<const int> free,
                       std::span<const double> values);
double residual_omp(const HopfLaxOperator& op, std::span<const int> free,
                    std::span<const double> values);

}  // namespace hopflax::kernels
