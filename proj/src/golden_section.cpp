#include "hopflax/golden_section.hpp"

#include <stdexcept>

namespace hopflax {

int golden_section_iterations(double width, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("golden_section: tolerance must be positive");
  if (width <= tol) return 0;
  const double golden_ratio = 1.6180339887498948482;
  return static_cast<int>(std::ceil(std::log(width / tol) / std::log(golden_ratio)));
}

}  // namespace hopflax
