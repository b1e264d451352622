#include "stils/assembly.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "stils/element.hpp"

namespace stils {

Vector SlabSystem::rhs(const Vector& previous) const {
  if (previous.size() != num_nodes)
    throw std::invalid_argument("previous state has " + std::to_string(previous.size()) +
                                " entries, slab system expects " + std::to_string(num_nodes));
  Vector b = matvec(transfer, previous);
  if (load.size() == b.size()) b += load;
  return b;
}

namespace {

SlabSystem assemble_elements(const Grid& grid, std::span<const Index> elements,
                             const std::vector<Index>* local_of, Index num_nodes,
                             const ProblemSetup& setup, Index k, const AssemblyOptions& options) {
  setup.validate();
  if (k < 1 || k > setup.n_slabs)
    throw std::invalid_argument("slab index " + std::to_string(k) + " out of range");

  const double tau = setup.tau();
  const double t_mid = setup.slab_midpoint(k);
  const TimeBasis basis = make_time_basis(options.order, tau);
  const int levels = basis.num_levels();

  const PointVelocity velocity = [&](const Point& x) { return setup.velocity(x, t_mid); };
  PointSource source;
  if (setup.has_source()) source = [&](const Point& x) { return setup.source(x.x(), x.y(), t_mid); };

  using Triplet = Eigen::Triplet<double, int>;
  std::vector<Triplet> lhs_entries;
  std::vector<Triplet> rhs_entries;
  lhs_entries.reserve(elements.size() * 16 * levels * levels);
  rhs_entries.reserve(elements.size() * 16 * levels);
  Vector load = Vector::Zero(num_nodes * levels);

  Eigen::MatrixXd lhs_block, rhs_block;
  Eigen::VectorXd load_block;
  for (Index e : elements) {
    const ElementMatrices m =
        element_spatial_matrices(grid.element_vertices(e), velocity, source,
                                 options.quadrature_order);
    combine_time_integrals(m, basis, lhs_block, rhs_block, source ? &load_block : nullptr);

    std::array<Index, 4> dof{};
    const auto& conn = grid.elements[static_cast<std::size_t>(e)];
    for (int a = 0; a < 4; ++a) dof[a] = local_of ? (*local_of)[conn[a]] : conn[a];

    for (int q = 0; q < levels; ++q) {
      for (int a = 0; a < 4; ++a) {
        const int row = static_cast<int>(q * num_nodes + dof[a]);
        for (int p = 0; p < levels; ++p)
          for (int b = 0; b < 4; ++b)
            lhs_entries.emplace_back(row, static_cast<int>(p * num_nodes + dof[b]),
                                     lhs_block(4 * q + a, 4 * p + b));
        for (int b = 0; b < 4; ++b)
          rhs_entries.emplace_back(row, static_cast<int>(dof[b]), rhs_block(4 * q + a, b));
        if (source) load[q * num_nodes + dof[a]] += load_block[4 * q + a];
      }
    }
  }

  SlabSystem system;
  system.order = options.order;
  system.num_nodes = num_nodes;
  system.levels = levels;
  SparseMatrix a(num_nodes * levels, num_nodes * levels);
  a.setFromTriplets(lhs_entries.begin(), lhs_entries.end());
  system.lhs = SparseSpd<double>(std::move(a));
  system.transfer.resize(num_nodes * levels, num_nodes);
  system.transfer.setFromTriplets(rhs_entries.begin(), rhs_entries.end());
  system.transfer.makeCompressed();
  system.load = std::move(load);
  return system;
}

}  // namespace

SlabSystem assemble_slab(const Grid& grid, const ProblemSetup& setup, Index k,
                         const AssemblyOptions& options) {
  std::vector<Index> all(static_cast<std::size_t>(grid.num_elements()));
  for (Index e = 0; e < grid.num_elements(); ++e) all[e] = e;
  return assemble_elements(grid, all, nullptr, grid.num_nodes(), setup, k, options);
}

SlabSystem assemble_subdomain_slab(const Grid& grid, const Partition& partition, int subdomain,
                                   const ProblemSetup& setup, Index k,
                                   const AssemblyOptions& options) {
  if (subdomain != 1 && subdomain != 2) throw std::invalid_argument("subdomain must be 1 or 2");
  const auto s = static_cast<std::size_t>(subdomain - 1);
  return assemble_elements(grid, partition.elements_of[s], &partition.global_to_local[s],
                           static_cast<Index>(partition.nodes_of[s].size()), setup, k, options);
}

std::vector<Constraint> merge_constraints(std::span<const Constraint> constraints) {
  std::vector<Constraint> sorted(constraints.begin(), constraints.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Constraint& a, const Constraint& b) { return a.node < b.node; });
  std::vector<Constraint> merged;
  for (const auto& c : sorted) {
    if (!merged.empty() && merged.back().node == c.node) {
      if (merged.back().value != c.value)
        throw std::invalid_argument("conflicting constraints on node " + std::to_string(c.node));
      continue;
    }
    merged.push_back(c);
  }
  return merged;
}

std::vector<Constraint> constraints_on_levels(std::span<const Constraint> constraints,
                                              Index num_nodes, int levels) {
  std::vector<Constraint> out;
  out.reserve(constraints.size() * static_cast<std::size_t>(levels));
  for (int l = 0; l < levels; ++l)
    for (const auto& c : constraints) out.push_back({l * num_nodes + c.node, c.value});
  return out;
}

DirichletElimination::DirichletElimination(const SparseSpd<double>& a, std::vector<Index> dofs)
    : dofs_(std::move(dofs)) {
  const Index n = a.size();
  std::sort(dofs_.begin(), dofs_.end());
  dofs_.erase(std::unique(dofs_.begin(), dofs_.end()), dofs_.end());
  std::vector<Index> slot(static_cast<std::size_t>(n), -1);
  for (std::size_t c = 0; c < dofs_.size(); ++c) {
    if (dofs_[c] < 0 || dofs_[c] >= n)
      throw std::invalid_argument("constrained index " + std::to_string(dofs_[c]) +
                                  " outside system of size " + std::to_string(n));
    slot[dofs_[c]] = static_cast<Index>(c);
  }

  using Triplet = Eigen::Triplet<double, int>;
  std::vector<Triplet> kept;
  std::vector<Triplet> coupled;
  kept.reserve(static_cast<std::size_t>(a.nonzeros()));
  const SparseMatrix& m = a.matrix();
  for (int r = 0; r < m.outerSize(); ++r) {
    if (slot[r] >= 0) {
      kept.emplace_back(r, r, 1.0);
      continue;
    }
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
      const Index c = it.col();
      if (slot[c] >= 0)
        coupled.emplace_back(r, static_cast<int>(slot[c]), it.value());
      else
        kept.emplace_back(r, static_cast<int>(c), it.value());
    }
  }
  SparseMatrix reduced(n, n);
  reduced.setFromTriplets(kept.begin(), kept.end());
  matrix_ = SparseSpd<double>(std::move(reduced));
  coupling_.resize(n, static_cast<Index>(dofs_.size()));
  coupling_.setFromTriplets(coupled.begin(), coupled.end());
  coupling_.makeCompressed();
}

Vector DirichletElimination::apply(const Vector& b, const Vector& values) const {
  if (b.size() != matrix_.size() || values.size() != static_cast<Index>(dofs_.size()))
    throw std::invalid_argument("Dirichlet elimination dimension mismatch");
  Vector out = b;
  if (!dofs_.empty()) out -= matvec(coupling_, values);
  for (std::size_t c = 0; c < dofs_.size(); ++c) out[dofs_[c]] = values[static_cast<Index>(c)];
  return out;
}

LinearSystem apply_dirichlet(const LinearSystem& system, std::span<const Constraint> constraints) {
  const std::vector<Constraint> merged = merge_constraints(constraints);
  std::vector<Index> dofs;
  Vector values(static_cast<Index>(merged.size()));
  for (std::size_t c = 0; c < merged.size(); ++c) {
    dofs.push_back(merged[c].node);
    values[static_cast<Index>(c)] = merged[c].value;
  }
  const DirichletElimination elimination(system.matrix, std::move(dofs));
  return {elimination.matrix(), elimination.apply(system.rhs, values)};
}

}  // namespace stils
