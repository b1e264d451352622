#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace stils {

using Index = Eigen::Index;
using Point = Eigen::Vector2d;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using SparseMatrixX = Eigen::SparseMatrix<Scalar, Eigen::RowMajor, int>;

using Vector = VectorX<double>;
using SparseMatrix = SparseMatrixX<double>;

}  // namespace stils
