#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace cesaro {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b].
///
/// Newton iteration on P_n from the Tricomi-style initial guess
/// cos(pi (i - 1/4) / (n + 1/2)); symmetric nodes are filled in pairs.
inline QuadratureRule gauss_legendre(std::size_t n, double a = -1.0, double b = 1.0) {
  if (n == 0) throw std::invalid_argument("gauss_legendre: need at least one node");
  QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double dn = static_cast<double>(n);
  const std::size_t pairs = (n + 1) / 2;

  for (std::size_t i = 1; i <= pairs; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) - 0.25) / (dn + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        const double dj = static_cast<double>(j);
        p1 = ((2.0 * dj - 1.0) * z * p2 - (dj - 1.0) * p3) / dj;
      }
      dp = dn * (z * p1 - p2) / (z * z - 1.0);
      const double step = p1 / dp;
      z -= step;
      if (std::abs(step) <= 1e-15) break;
    }
    // Refresh the derivative at the converged node for the weight.
    double p1 = 1.0, p2 = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
      const double p3 = p2;
      p2 = p1;
      const double dj = static_cast<double>(j);
      p1 = ((2.0 * dj - 1.0) * z * p2 - (dj - 1.0) * p3) / dj;
    }
    dp = dn * (z * p1 - p2) / (z * z - 1.0);

    const double w = 2.0 * half / ((1.0 - z * z) * dp * dp);
    rule.nodes[i - 1] = mid - half * z;
    rule.nodes[n - i] = mid + half * z;
    rule.weights[i - 1] = w;
    rule.weights[n - i] = w;
  }
  return rule;
}

}  // namespace cesaro
