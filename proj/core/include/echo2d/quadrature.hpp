#pragma once

#include <vector>

namespace echo2d {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// n-point Gauss-Legendre rule mapped onto [lower, upper].
QuadratureRule gauss_legendre(int n, double lower, double upper);

}  // namespace echo2d
