#include <doctest.h>

#include "oracles.hpp"
#include "stils/pcg.hpp"
#include "stils/sparse.hpp"

using namespace stils;

TEST_CASE("identity system converges immediately") {
  const SparseSpd<double> a(oracle::to_sparse(Eigen::MatrixXd::Identity(6, 6)));
  const Vector b = Vector::LinSpaced(6, 1.0, 6.0);
  const auto r = pcg_solve(a, b, Vector(Vector::Zero(6)));
  CHECK(r.report.converged);
  CHECK(r.report.iterations <= 1);
  CHECK((r.x - b).norm() < 1e-14);
}

TEST_CASE("Jacobi solves a diagonal system in one iteration") {
  const SparseSpd<double> a(oracle::to_sparse(Eigen::Vector3d(1, 2, 3).asDiagonal().toDenseMatrix()));
  const auto r = pcg_solve(a, Vector{{1.0, 1.0, 1.0}}, Vector(Vector::Zero(3)));
  CHECK(r.report.iterations == 1);
  CHECK(r.x[1] == doctest::Approx(0.5));
  CHECK(r.x[2] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("zero right-hand side returns zero") {
  const SparseSpd<double> a(oracle::to_sparse(oracle::random_spd(5, 1)));
  const auto r = pcg_solve(a, Vector(Vector::Zero(5)), Vector(Vector::Ones(5)));
  CHECK(r.report.converged);
  CHECK(r.x.norm() == 0.0);
}

TEST_CASE("random SPD matrices agree with a dense LU solve") {
  for (std::uint32_t seed : {2u, 9u, 31u}) {
    const Eigen::MatrixXd dense = oracle::random_spd(50, seed);
    const SparseSpd<double> a(oracle::to_sparse(dense));
    const Vector b = Vector::LinSpaced(50, -1.0, 2.0);
    for (auto pre : {Preconditioner::none, Preconditioner::jacobi}) {
      const auto r = pcg_solve(a, b, Vector(Vector::Zero(50)), {1e-12, 0, pre});
      const Vector ref = dense.partialPivLu().solve(b);
      CHECK(r.report.converged);
      CHECK((r.x - ref).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("error in the energy norm never increases") {
  const Eigen::MatrixXd dense = oracle::random_spd(40, 4);
  const SparseSpd<double> a(oracle::to_sparse(dense));
  const Vector b = Vector::Ones(40);
  const Vector exact = dense.ldlt().solve(b);
  std::vector<double> errs;
  pcg_solve<double>(a, b, Vector(Vector::Zero(40)), {1e-12, 0, Preconditioner::jacobi},
                    [&](Index, const Vector& x) {
                      const Vector e = x - exact;
                      errs.push_back(std::sqrt(e.dot(dense * e)));
                    });
  REQUIRE(errs.size() > 2);
  for (std::size_t i = 1; i < errs.size(); ++i) CHECK(errs[i] <= errs[i - 1] * (1 + 1e-12) + 1e-14);
}

TEST_CASE("indefinite matrices raise a breakdown") {
  Eigen::Matrix2d m;
  m << 1, 0, 0, -1;
  CHECK_THROWS_AS(pcg_solve(SparseSpd<double>(oracle::to_sparse(m)), Vector{{1.0, 1.0}},
                            Vector(Vector::Zero(2)), {1e-10, 0, Preconditioner::none}),
                  LinearSolverBreakdown);
  CHECK_THROWS_AS(pcg_solve(SparseSpd<double>(oracle::to_sparse(m)), Vector{{1.0, 1.0}},
                            Vector(Vector::Zero(2))),
                  LinearSolverBreakdown);
}

TEST_CASE("iteration cap is respected") {
  const SparseSpd<double> a(oracle::to_sparse(oracle::random_spd(30, 8)));
  const auto r = pcg_solve(a, Vector(Vector::Ones(30)), Vector(Vector::Zero(30)), {1e-14, 2, Preconditioner::none});
  CHECK(r.report.iterations == 2);
  CHECK_FALSE(r.report.converged);
}

TEST_CASE("single precision instantiation") {
  const Eigen::MatrixXf dense = oracle::random_spd(10, 3).cast<float>();
  const SparseSpd<float> a(SparseMatrixX<float>(dense.sparseView()));
  const VectorX<float> b = VectorX<float>::Ones(10);
  const auto r = pcg_solve(a, b, VectorX<float>(VectorX<float>::Zero(10)), {1e-5, 0, Preconditioner::jacobi});
  CHECK(r.report.converged);
  CHECK((dense * r.x - b).norm() < 1e-3f);
}

TEST_CASE("matvec examples") {
  Eigen::Matrix3d m;
  m << 2, -1, 0, -1, 2, -1, 0, -1, 2;
  const SparseMatrix s = oracle::to_sparse(m);
  const Vector y = matvec(s, Vector{{1.0, 2.0, 3.0}});
  CHECK(y == Vector{{0.0, 0.0, 4.0}});
  CHECK_THROWS_AS(matvec(s, Vector(Vector::Ones(4))), std::invalid_argument);
  CHECK_THROWS_AS(SparseSpd<double>(SparseMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("structure queries") {
  Eigen::Matrix3d m;
  m << 2, -1, 0, -1, 2, -1, 0, -1.5, 2;
  const SparseSpd<double> a(oracle::to_sparse(m));
  CHECK(a.size() == 3);
  CHECK(a.nonzeros() == 7);
  CHECK(a.max_row_nonzeros() == 3);
  CHECK(a.has_valid_structure());
  CHECK(a.symmetry_defect() == doctest::Approx(0.5));
  CHECK(a.max_abs() == 2.0);
  CHECK(a.diagonal() == Vector{{2.0, 2.0, 2.0}});
}
