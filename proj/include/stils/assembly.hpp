#pragma once

#include <span>
#include <vector>

#include "stils/fields.hpp"
#include "stils/mesh.hpp"
#include "stils/sparse.hpp"
#include "stils/time_basis.hpp"

namespace stils {

struct Constraint {
  Index node;
  double value;
};

/// Linear system of one time slab: lhs * c^k = transfer * c^{k-1} + load.
///
/// Unknowns are ordered level-major: for Q1 the slab-end values, for Q2 the
/// mid-slab values followed by the slab-end values.
struct SlabSystem {
  TimeOrder order = TimeOrder::q1;
  Index num_nodes = 0;
  int levels = 1;
  SparseSpd<double> lhs;
  SparseMatrix transfer;  // (levels * num_nodes) x num_nodes
  Vector load;            // zero when f == 0

  Index num_unknowns() const { return num_nodes * levels; }
  Vector rhs(const Vector& previous) const;
};

struct AssemblyOptions {
  TimeOrder order = TimeOrder::q1;
  int quadrature_order = 3;
};

/// Assembles slab k (1-based) over the whole grid. The velocity and source are
/// frozen at the slab midpoint.
SlabSystem assemble_slab(const Grid& grid, const ProblemSetup& setup, Index k,
                         const AssemblyOptions& options = {});

/// Assembles slab k over the elements of one subdomain, in subdomain-local
/// node numbering (Partition::nodes_of).
SlabSystem assemble_subdomain_slab(const Grid& grid, const Partition& partition, int subdomain,
                                   const ProblemSetup& setup, Index k,
                                   const AssemblyOptions& options = {});

/// Sorted, de-duplicated constraints. Throws std::invalid_argument when one
/// node carries two different values.
std::vector<Constraint> merge_constraints(std::span<const Constraint> constraints);

/// Maps node constraints onto every time level of a slab system.
std::vector<Constraint> constraints_on_levels(std::span<const Constraint> constraints,
                                              Index num_nodes, int levels);

/// Symmetric elimination of a fixed set of constrained unknowns. The reduced
/// matrix is built once; right-hand sides for any prescribed values are then
/// cheap to form.
class DirichletElimination {
 public:
  DirichletElimination() = default;
  DirichletElimination(const SparseSpd<double>& a, std::vector<Index> dofs);

  const SparseSpd<double>& matrix() const { return matrix_; }
  const std::vector<Index>& dofs() const { return dofs_; }
  /// b - A[:, dofs] * values on free rows, values on constrained rows.
  Vector apply(const Vector& b, const Vector& values) const;

 private:
  SparseSpd<double> matrix_;
  SparseMatrix coupling_;
  std::vector<Index> dofs_;
};

struct LinearSystem {
  SparseSpd<double> matrix;
  Vector rhs;
};

/// For each constrained j: moves A_ij * value to the right side, zeroes row
/// and column j, sets A_jj = 1 and rhs_j = value.
LinearSystem apply_dirichlet(const LinearSystem& system, std::span<const Constraint> constraints);

}  // namespace stils
