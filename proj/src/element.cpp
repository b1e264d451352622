#include "stils/element.hpp"

#include <Eigen/LU>
#include <string>

#include "stils/quadrature.hpp"

namespace stils {

Eigen::Vector4d q1_shape(double xi, double eta) {
  return 0.25 * Eigen::Vector4d{(1 - xi) * (1 - eta), (1 + xi) * (1 - eta), (1 + xi) * (1 + eta),
                                (1 - xi) * (1 + eta)};
}

Eigen::Matrix<double, 4, 2> q1_shape_gradients(double xi, double eta) {
  Eigen::Matrix<double, 4, 2> g;
  g << -(1 - eta), -(1 - xi),
        (1 - eta), -(1 + xi),
        (1 + eta),  (1 + xi),
       -(1 + eta),  (1 - xi);
  return 0.25 * g;
}

ElementMatrices element_spatial_matrices(const ElementVertices& vertices,
                                         const PointVelocity& velocity,
                                         const PointSource& source, int order) {
  const GaussRule rule = gauss_legendre(order);
  Eigen::Matrix<double, 2, 4> coords;
  for (int a = 0; a < 4; ++a) coords.col(a) = vertices[a];

  ElementMatrices m;
  for (int gx = 0; gx < rule.size(); ++gx) {
    for (int gy = 0; gy < rule.size(); ++gy) {
      const double xi = rule.points[gx];
      const double eta = rule.points[gy];
      const Eigen::Vector4d psi = q1_shape(xi, eta);
      const Eigen::Matrix<double, 4, 2> dref = q1_shape_gradients(xi, eta);
      const Eigen::Matrix2d jac = coords * dref;  // d(x,y)/d(xi,eta)
      const double det = jac.determinant();
      if (!(det > 0.0))
        throw AssemblyError("non-positive element Jacobian " + std::to_string(det));
      const Eigen::Matrix<double, 4, 2> grad = dref * jac.inverse();
      const Point x = coords * psi;
      const double w = rule.weights[gx] * rule.weights[gy] * det;

      const Eigen::Vector4d u_grad = grad * velocity(x);
      m.mass.noalias() += w * psi * psi.transpose();
      m.advection.noalias() += w * psi * u_grad.transpose();
      m.streamline.noalias() += w * u_grad * u_grad.transpose();
      if (source) {
        const double f = source(x);
        m.source += (w * f) * psi;
        m.source_streamline += (w * f) * u_grad;
      }
    }
  }
  return m;
}

void combine_time_integrals(const ElementMatrices& m, const TimeBasis& basis,
                            Eigen::MatrixXd& lhs, Eigen::MatrixXd& rhs, Eigen::VectorXd* load) {
  const int levels = basis.num_levels();
  lhs.setZero(4 * levels, 4 * levels);
  rhs.setZero(4 * levels, 4);
  if (load) load->setZero(4 * levels);
  const Eigen::Matrix4d adv_t = m.advection.transpose();

  // Test function psi_i a_q against trial psi_l a_p.
  auto block = [&](int q, int p) -> Eigen::Matrix4d {
    return basis.deriv_deriv(p, q) * m.mass + basis.deriv_value(p, q) * adv_t +
           basis.deriv_value(q, p) * m.advection + basis.value_value(p, q) * m.streamline;
  };
  for (int q = 1; q <= levels; ++q) {
    for (int p = 1; p <= levels; ++p) lhs.block<4, 4>(4 * (q - 1), 4 * (p - 1)) = block(q, p);
    rhs.block<4, 4>(4 * (q - 1), 0) = -block(q, 0);
    if (load) {
      load->segment<4>(4 * (q - 1)) =
          basis.integral_deriv[q] * m.source + basis.integral_value[q] * m.source_streamline;
    }
  }
}

ElementQ1Blocks element_q1_integrals(const ElementVertices& vertices,
                                     const PointVelocity& velocity, double tau, int order) {
  if (!(tau > 0.0)) throw AssemblyError("time step must be positive");
  const ElementMatrices m = element_spatial_matrices(vertices, velocity, {}, order);
  const Eigen::Matrix4d adv_t = m.advection.transpose();
  ElementQ1Blocks b;
  b.lhs = (tau / 3.0) * m.streamline + 0.5 * m.advection + 0.5 * adv_t + m.mass / tau;
  b.rhs = (-tau / 6.0) * m.streamline - 0.5 * m.advection + 0.5 * adv_t + m.mass / tau;
  return b;
}

ElementQ2Blocks element_q2_time_integrals(const ElementVertices& vertices,
                                          const PointVelocity& velocity, double tau,
                                          int order) {
  if (!(tau > 0.0)) throw AssemblyError("time step must be positive");
  const ElementMatrices m = element_spatial_matrices(vertices, velocity, {}, order);
  Eigen::MatrixXd lhs, rhs;
  combine_time_integrals(m, make_time_basis(TimeOrder::q2, tau), lhs, rhs, nullptr);
  ElementQ2Blocks b;
  b.lhs = lhs;
  b.rhs = rhs;
  return b;
}

}  // namespace stils
