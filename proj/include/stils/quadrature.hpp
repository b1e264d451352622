#pragma once

#include <vector>

namespace stils {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
};

/// n-point Gauss-Legendre rule (Golub-Welsch), exact for degree 2n - 1.
GaussRule gauss_legendre(int n);

/// Same rule mapped to [a, b].
GaussRule gauss_legendre(int n, double a, double b);

}  // namespace stils
