#pragma once

#include <array>
#include <functional>
#include <stdexcept>

#include <Eigen/Core>

#include "stils/time_basis.hpp"
#include "stils/types.hpp"

namespace stils {

using ElementVertices = std::array<Point, 4>;  // counter-clockwise
using PointVelocity = std::function<Point(const Point&)>;
using PointSource = std::function<double(const Point&)>;

class AssemblyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bilinear shape functions on the reference square [-1, 1]^2, node order
/// (-1,-1), (1,-1), (1,1), (-1,1).
Eigen::Vector4d q1_shape(double xi, double eta);
/// Columns are d/dxi and d/deta.
Eigen::Matrix<double, 4, 2> q1_shape_gradients(double xi, double eta);

/// Spatial building blocks of the time-integrated least-squares form, with
/// row index i (test) and column index l (trial):
///   mass(i, l)       = int psi_l psi_i
///   advection(i, l)  = int (u . grad psi_l) psi_i
///   streamline(i, l) = int (u . grad psi_l)(u . grad psi_i)
///   source(i)        = int f psi_i
///   source_streamline(i) = int f (u . grad psi_i)
struct ElementMatrices {
  Eigen::Matrix4d mass = Eigen::Matrix4d::Zero();
  Eigen::Matrix4d advection = Eigen::Matrix4d::Zero();
  Eigen::Matrix4d streamline = Eigen::Matrix4d::Zero();
  Eigen::Vector4d source = Eigen::Vector4d::Zero();
  Eigen::Vector4d source_streamline = Eigen::Vector4d::Zero();
};

/// Tensor Gauss quadrature with `order` points per direction; throws
/// AssemblyError if the Jacobian determinant is not positive at a point.
ElementMatrices element_spatial_matrices(const ElementVertices& vertices,
                                         const PointVelocity& velocity,
                                         const PointSource& source = {}, int order = 3);

struct ElementQ1Blocks {
  Eigen::Matrix4d lhs;  // coefficients of the slab-end values
  Eigen::Matrix4d rhs;  // coefficients of the slab-start values
};

ElementQ1Blocks element_q1_integrals(const ElementVertices& vertices,
                                     const PointVelocity& velocity, double tau, int order = 3);

/// Unknown ordering is (mid level nodes 0..3, end level nodes 0..3).
struct ElementQ2Blocks {
  Eigen::Matrix<double, 8, 8> lhs;
  Eigen::Matrix<double, 8, 4> rhs;
};

ElementQ2Blocks element_q2_time_integrals(const ElementVertices& vertices,
                                          const PointVelocity& velocity, double tau,
                                          int order = 3);

/// Combines spatial matrices with a time basis. Returns the (levels*4) square
/// LHS and (levels*4) x 4 RHS blocks, with level-major ordering.
void combine_time_integrals(const ElementMatrices& m, const TimeBasis& basis,
                            Eigen::MatrixXd& lhs, Eigen::MatrixXd& rhs, Eigen::VectorXd* load);

}  // namespace stils
