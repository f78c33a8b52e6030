#pragma once

#include <algorithm>
#include <cmath>

namespace hopflax {

struct ScalarMinimum {
  double t = 0.0;
  double value = 0.0;
};

/// Number of golden-section steps that shrink [a, b] below tol.
int golden_section_iterations(double width, double tol);

/// Minimizes a convex f on [a, b]: a fixed number of golden-section steps
/// (see golden_section_iterations) followed by one parabolic step through
/// the final bracket. Both endpoints are always candidates, so a minimum
/// pinned at a or b is returned exactly.
template <class F>
ScalarMinimum golden_section_minimize(F&& f, double a, double b, double tol) {
  constexpr double inv_phi = 0.6180339887498948482;  // 1 / golden ratio

  ScalarMinimum best{a, f(a)};
  const auto consider = [&best](double t, double v) {
    if (v < best.value) best = {t, v};
  };
  double fa = best.value;
  double fb = f(b);
  consider(b, fb);

  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  const int steps = golden_section_iterations(b - a, tol);
  for (int k = 0; k < steps; ++k) {
    if (fc <= fd) {
      b = d;
      fb = fd;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      fa = fc;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  consider(c, fc);
  consider(d, fd);

  // Parabola through (a, fa), (m, fm), (b, fb) with m the better interior point.
  const double m = fc <= fd ? c : d;
  const double fm = std::min(fc, fd);
  const double p = (m - a) * (m - a) * (fm - fb) - (m - b) * (m - b) * (fm - fa);
  const double q = (m - a) * (fm - fb) - (m - b) * (fm - fa);
  if (q != 0.0 && std::isfinite(p / q)) {
    const double t = m - 0.5 * p / q;
    if (t > a && t < b) consider(t, f(t));
  }
  return best;
}

}  // namespace hopflax
