#include "stils/time_basis.hpp"

#include <stdexcept>

#include "stils/quadrature.hpp"

namespace stils {

double TimeBasis::node(int m) const {
  if (order == TimeOrder::q1) return m == 0 ? 0.0 : tau;
  return 0.5 * tau * m;
}

double TimeBasis::value(int m, double t) const {
  const double s = t / tau;
  if (order == TimeOrder::q1) return m == 0 ? 1.0 - s : s;
  switch (m) {
    case 0: return (2.0 * s - 1.0) * (s - 1.0);
    case 1: return 4.0 * s * (1.0 - s);
    default: return s * (2.0 * s - 1.0);
  }
}

double TimeBasis::derivative(int m, double t) const {
  const double s = t / tau;
  if (order == TimeOrder::q1) return (m == 0 ? -1.0 : 1.0) / tau;
  switch (m) {
    case 0: return (4.0 * s - 3.0) / tau;
    case 1: return (4.0 - 8.0 * s) / tau;
    default: return (4.0 * s - 1.0) / tau;
  }
}

TimeBasis make_time_basis(TimeOrder order, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("time step must be positive");
  TimeBasis basis;
  basis.order = order;
  basis.tau = tau;
  const int n = basis.num_functions();
  basis.deriv_deriv = Eigen::MatrixXd::Zero(n, n);
  basis.deriv_value = Eigen::MatrixXd::Zero(n, n);
  basis.value_value = Eigen::MatrixXd::Zero(n, n);
  basis.integral_deriv = Eigen::VectorXd::Zero(n);
  basis.integral_value = Eigen::VectorXd::Zero(n);

  const GaussRule rule = gauss_legendre(5, 0.0, tau);
  for (int g = 0; g < rule.size(); ++g) {
    const double t = rule.points[g];
    const double w = rule.weights[g];
    for (int p = 0; p < n; ++p) {
      const double vp = basis.value(p, t);
      const double dp = basis.derivative(p, t);
      basis.integral_deriv[p] += w * dp;
      basis.integral_value[p] += w * vp;
      for (int q = 0; q < n; ++q) {
        basis.deriv_deriv(p, q) += w * dp * basis.derivative(q, t);
        basis.deriv_value(p, q) += w * dp * basis.value(q, t);
        basis.value_value(p, q) += w * vp * basis.value(q, t);
      }
    }
  }
  return basis;
}

const char* to_string(TimeOrder order) { return order == TimeOrder::q1 ? "q1" : "q2"; }

}  // namespace stils
