#include "echo2d/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "echo2d/error.hpp"

namespace echo2d {

QuadratureRule gauss_legendre(int n, double lower, double upper) {
  if (n < 1) throw ValidationError("gauss_legendre: n must be positive");
  if (!(upper > lower)) throw ValidationError("gauss_legendre: empty interval");

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);

  const double half_width = 0.5 * (upper - lower);
  const double mid = 0.5 * (upper + lower);
  const int half = (n + 1) / 2;

  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);

    // x is the i-th root counted from +1; store ascending.
    rule.nodes[i] = mid - half_width * x;
    rule.nodes[n - 1 - i] = mid + half_width * x;
    rule.weights[i] = half_width * w;
    rule.weights[n - 1 - i] = half_width * w;
  }
  return rule;
}

}  // namespace echo2d
