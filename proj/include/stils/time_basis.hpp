#pragma once

#include <Eigen/Core>

namespace stils {

enum class TimeOrder { q1, q2 };

/// Lagrange basis in time on one slab [0, tau].
///
/// Function 0 is attached to the slab start (known data). Q1 has one more
/// function at tau; Q2 has two, at tau/2 and tau. The unknown "levels" of a
/// slab system are functions 1..num_levels().
///
/// The time tables are the integrals over the slab that appear when the
/// space-time least-squares form is integrated in t:
///   deriv_deriv(p, q) = int a_p' a_q'
///   deriv_value(p, q) = int a_p' a_q
///   value_value(p, q) = int a_p a_q
struct TimeBasis {
  TimeOrder order = TimeOrder::q1;
  double tau = 1.0;
  Eigen::MatrixXd deriv_deriv;
  Eigen::MatrixXd deriv_value;
  Eigen::MatrixXd value_value;
  Eigen::VectorXd integral_deriv;
  Eigen::VectorXd integral_value;

  int num_functions() const { return order == TimeOrder::q1 ? 2 : 3; }
  int num_levels() const { return num_functions() - 1; }
  /// Node of function m in [0, tau].
  double node(int m) const;
  double value(int m, double t) const;
  double derivative(int m, double t) const;
};

/// Tables integrated with a 5-point Gauss rule, exact for these polynomials.
TimeBasis make_time_basis(TimeOrder order, double tau);

const char* to_string(TimeOrder order);

}  // namespace stils
