#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "stils/types.hpp"

namespace stils {

/// Square sparse matrix in compressed row storage, intended to be symmetric
/// positive definite. Full (both triangles) storage.
template <typename Scalar>
class SparseSpd {
 public:
  SparseSpd() = default;

  explicit SparseSpd(SparseMatrixX<Scalar> matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols())
      throw std::invalid_argument("SparseSpd requires a square matrix");
    matrix_.makeCompressed();
  }

  Index size() const { return matrix_.rows(); }
  Index nonzeros() const { return matrix_.nonZeros(); }
  const SparseMatrixX<Scalar>& matrix() const { return matrix_; }

  VectorX<Scalar> diagonal() const { return matrix_.diagonal(); }

  Scalar max_abs() const {
    Scalar m = 0;
    for (Index k = 0; k < matrix_.nonZeros(); ++k)
      m = std::max(m, std::abs(matrix_.valuePtr()[k]));
    return m;
  }

  /// max |A_ij - A_ji| over stored entries.
  Scalar symmetry_defect() const {
    const SparseMatrixX<Scalar> diff = matrix_ - SparseMatrixX<Scalar>(matrix_.transpose());
    Scalar m = 0;
    for (Index k = 0; k < diff.nonZeros(); ++k) m = std::max(m, std::abs(diff.valuePtr()[k]));
    return m;
  }

  /// Row offsets monotone, column indices strictly increasing within each row.
  bool has_valid_structure() const {
    const int* outer = matrix_.outerIndexPtr();
    const int* inner = matrix_.innerIndexPtr();
    for (Index r = 0; r < matrix_.rows(); ++r) {
      if (outer[r] > outer[r + 1]) return false;
      for (int k = outer[r] + 1; k < outer[r + 1]; ++k)
        if (inner[k - 1] >= inner[k]) return false;
    }
    return true;
  }

  Index max_row_nonzeros() const {
    Index m = 0;
    for (Index r = 0; r < matrix_.rows(); ++r)
      m = std::max<Index>(m, matrix_.outerIndexPtr()[r + 1] - matrix_.outerIndexPtr()[r]);
    return m;
  }

 private:
  SparseMatrixX<Scalar> matrix_;
};

/// y = A x. Rows are accumulated left to right so results are reproducible.
template <typename Scalar>
VectorX<Scalar> matvec(const SparseMatrixX<Scalar>& a, const VectorX<Scalar>& x) {
  if (a.cols() != x.size())
    throw std::invalid_argument("matvec dimension mismatch: matrix has " +
                                std::to_string(a.cols()) + " columns, vector has " +
                                std::to_string(x.size()) + " entries");
  VectorX<Scalar> y(a.rows());
  const int* outer = a.outerIndexPtr();
  const int* inner = a.innerIndexPtr();
  const Scalar* values = a.valuePtr();
  for (Index r = 0; r < a.rows(); ++r) {
    Scalar sum = 0;
    for (int k = outer[r]; k < outer[r + 1]; ++k) sum += values[k] * x[inner[k]];
    y[r] = sum;
  }
  return y;
}

template <typename Scalar>
VectorX<Scalar> matvec(const SparseSpd<Scalar>& a, const VectorX<Scalar>& x) {
  return matvec(a.matrix(), x);
}

}  // namespace stils
