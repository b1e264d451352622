#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "stils/sparse.hpp"

namespace stils {

enum class Preconditioner { none, jacobi };

struct PcgOptions {
  double tol = 1e-10;  // relative to ||b||_2
  Index max_iter = 0;  // 0 selects 10 * n
  Preconditioner preconditioner = Preconditioner::jacobi;
};

struct PcgReport {
  Index iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

template <typename Scalar>
struct PcgResult {
  VectorX<Scalar> x;
  PcgReport report;
};

/// Raised when p^T A p <= 0 or the Jacobi diagonal is not positive, i.e. the
/// operator is not SPD.
class LinearSolverBreakdown : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Scalar>
using IterateObserver = std::function<void(Index iteration, const VectorX<Scalar>& x)>;

template <typename Scalar>
PcgResult<Scalar> pcg_solve(const SparseSpd<Scalar>& a, const VectorX<Scalar>& b,
                            const VectorX<Scalar>& x0, const PcgOptions& options = {},
                            const IterateObserver<Scalar>& observer = {}) {
  const Index n = a.size();
  if (b.size() != n || x0.size() != n) throw std::invalid_argument("pcg_solve dimension mismatch");
  if (!(options.tol > 0.0)) throw std::invalid_argument("pcg tolerance must be positive");
  const Index max_iter = options.max_iter > 0 ? options.max_iter : 10 * std::max<Index>(n, 1);

  VectorX<Scalar> inv_diag = VectorX<Scalar>::Ones(n);
  if (options.preconditioner == Preconditioner::jacobi) {
    const VectorX<Scalar> d = a.diagonal();
    for (Index i = 0; i < n; ++i) {
      if (!(d[i] > 0))
        throw LinearSolverBreakdown("non-positive diagonal entry at row " + std::to_string(i));
      inv_diag[i] = Scalar(1) / d[i];
    }
  }

  PcgResult<Scalar> result;
  const Scalar b_norm = b.norm();
  if (b_norm == Scalar(0)) {
    result.x = VectorX<Scalar>::Zero(n);
    result.report.converged = true;
    return result;
  }
  const Scalar threshold = static_cast<Scalar>(options.tol) * b_norm;

  VectorX<Scalar> x = x0;
  VectorX<Scalar> r = b - matvec(a, x);
  Index iterations = 0;
  if (observer) observer(0, x);

  // Outer loop restarts from the true residual if recurrence drift made the
  // recursive residual look converged when it is not.
  while (r.norm() > threshold && iterations < max_iter) {
    VectorX<Scalar> z = inv_diag.cwiseProduct(r);
    VectorX<Scalar> p = z;
    Scalar rz = r.dot(z);
    while (iterations < max_iter) {
      const VectorX<Scalar> ap = matvec(a, p);
      const Scalar pap = p.dot(ap);
      if (!(pap > 0))
        throw LinearSolverBreakdown("p^T A p = " + std::to_string(static_cast<double>(pap)) +
                                    " at iteration " + std::to_string(iterations));
      const Scalar alpha = rz / pap;
      x += alpha * p;
      r -= alpha * ap;
      ++iterations;
      if (observer) observer(iterations, x);
      if (r.norm() <= threshold) break;
      z = inv_diag.cwiseProduct(r);
      const Scalar rz_next = r.dot(z);
      p = z + (rz_next / rz) * p;
      rz = rz_next;
    }
    r = b - matvec(a, x);
  }

  result.report.iterations = iterations;
  result.report.relative_residual = static_cast<double>(r.norm() / b_norm);
  result.report.converged = r.norm() <= threshold;
  result.x = std::move(x);
  return result;
}

}  // namespace stils
