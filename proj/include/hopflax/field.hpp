#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace hopflax {

/// Nodal values of a piecewise-linear function plus the Dirichlet mask.
/// Free (non-Dirichlet) entries may be +inf.
struct NodalField {
  std::vector<double> values;
  std::vector<std::uint8_t> dirichlet;

  NodalField() = default;
  explicit NodalField(int num_vertices) : values(num_vertices, INFINITY), dirichlet(num_vertices, 0) {}

  int size() const { return static_cast<int>(values.size()); }
  bool is_dirichlet(int v) const { return dirichlet[v] != 0; }

  void pin(int v, double g) {
    values[v] = g;
    dirichlet[v] = 1;
  }
};

}  // namespace hopflax
