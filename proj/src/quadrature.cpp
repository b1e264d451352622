#include "stils/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace stils {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("quadrature order must be at least 1");
  GaussRule rule;
  if (n == 1) {
    rule.points = {0.0};
    rule.weights = {2.0};
    return rule;
  }
  // Jacobi matrix of the Legendre three-term recurrence.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    rule.points[k] = eig.eigenvalues()[k];
    const double v0 = eig.eigenvectors()(0, k);
    rule.weights[k] = 2.0 * v0 * v0;
  }
  // Symmetrize to remove eigensolver noise.
  for (int k = 0; k < n / 2; ++k) {
    const double p = 0.5 * (rule.points[n - 1 - k] - rule.points[k]);
    const double w = 0.5 * (rule.weights[n - 1 - k] + rule.weights[k]);
    rule.points[k] = -p;
    rule.points[n - 1 - k] = p;
    rule.weights[k] = w;
    rule.weights[n - 1 - k] = w;
  }
  if (n % 2 == 1) rule.points[n / 2] = 0.0;
  return rule;
}

GaussRule gauss_legendre(int n, double a, double b) {
  GaussRule rule = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (int k = 0; k < rule.size(); ++k) {
    rule.points[k] = mid + half * rule.points[k];
    rule.weights[k] *= half;
  }
  return rule;
}

}  // namespace stils
