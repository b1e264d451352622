#include "stils/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace stils {

SolverError::SolverError(Index slab, const std::string& what)
    : std::runtime_error("slab " + std::to_string(slab) + ": " + what), slab_(slab) {}

void MarchConfig::validate() const {
  if (!(tol_interface > 0.0)) throw std::invalid_argument("interface tolerance must be positive");
  if (max_ddm_iter < 1) throw std::invalid_argument("max_ddm_iter must be at least 1");
  if (!(pcg.tol > 0.0)) throw std::invalid_argument("pcg tolerance must be positive");
  if (eps < 0.0) throw std::invalid_argument("classification tolerance must be non-negative");
  if (snapshot_every < 0) throw std::invalid_argument("snapshot stride must be non-negative");
}

const Snapshot* Trajectory::find(Index step) const {
  for (const auto& s : snapshots)
    if (s.step == step) return &s;
  return nullptr;
}

Vector interpolate_initial(const Grid& grid, const ProblemSetup& setup) {
  Vector c(grid.num_nodes());
  for (Index n = 0; n < grid.num_nodes(); ++n) c[n] = setup.initial(grid.nodes[n].x(), grid.nodes[n].y());
  return c;
}

std::vector<Index> interface_dirichlet_nodes(const Partition& partition, int subdomain,
                                             std::span<const Index> inflow_nodes) {
  const auto& candidates = subdomain == 1 ? partition.gamma_minus : partition.gamma_plus;
  std::vector<Index> out;
  for (Index n : candidates)
    if (!std::binary_search(inflow_nodes.begin(), inflow_nodes.end(), n)) out.push_back(n);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

/// One slab system in some local numbering together with its constraint
/// layout: physical inflow nodes carry c_b, interface nodes carry exchanged
/// data. Solves for any interface data by symmetric elimination and PCG.
struct ConstrainedSlab {
  SlabSystem system;
  std::vector<Index> nodes;      // constrained local nodes, sorted
  std::vector<Index> slot;       // -1: inflow, else index into interface data
  Vector inflow_values;          // per constrained node (inflow entries only)
  Index num_interface = 0;
  DirichletElimination elimination;

  void set_layout(std::span<const Index> inflow_local, std::span<const Index> interface_local) {
    std::vector<std::pair<Index, Index>> all;
    for (Index n : inflow_local) all.emplace_back(n, -1);
    for (std::size_t i = 0; i < interface_local.size(); ++i)
      all.emplace_back(interface_local[i], static_cast<Index>(i));
    std::sort(all.begin(), all.end());
    nodes.clear();
    slot.clear();
    for (const auto& [n, s] : all) {
      nodes.push_back(n);
      slot.push_back(s);
    }
    num_interface = static_cast<Index>(interface_local.size());
    inflow_values = Vector::Zero(static_cast<Index>(nodes.size()));
    std::vector<Index> dofs;
    for (int l = 0; l < system.levels; ++l)
      for (Index n : nodes) dofs.push_back(l * system.num_nodes + n);
    elimination = DirichletElimination(system.lhs, std::move(dofs));
  }

  /// interface_data is level-major, num_interface entries per level.
  Vector constraint_values(const Vector& interface_data) const {
    const auto nc = static_cast<Index>(nodes.size());
    Vector v(nc * system.levels);
    for (int l = 0; l < system.levels; ++l)
      for (Index c = 0; c < nc; ++c)
        v[l * nc + c] = slot[c] < 0 ? inflow_values[c] : interface_data[l * num_interface + slot[c]];
    return v;
  }

  Vector solve(const Vector& base_rhs, const Vector& interface_data, const Vector& warm,
               const PcgOptions& options, Index slab, Index& pcg_iterations) const {
    const Vector rhs = elimination.apply(base_rhs, constraint_values(interface_data));
    PcgResult<double> r;
    try {
      r = pcg_solve(elimination.matrix(), rhs, warm, options);
    } catch (const LinearSolverBreakdown& e) {
      throw SolverError(slab, std::string("PCG breakdown: ") + e.what());
    }
    pcg_iterations += r.report.iterations;
    if (!r.report.converged)
      throw SolverError(slab, "PCG did not converge in " + std::to_string(r.report.iterations) +
                                  " iterations (relative residual " +
                                  std::to_string(r.report.relative_residual) + ")");
    return r.x;
  }
};

Vector replicate_levels(const Vector& state, int levels) {
  Vector x(state.size() * levels);
  for (int l = 0; l < levels; ++l) x.segment(l * state.size(), state.size()) = state;
  return x;
}

Vector end_level(const Vector& x, Index num_nodes) { return x.tail(num_nodes); }

/// Values of x at the given local nodes, level-major.
Vector trace(const Vector& x, Index num_nodes, int levels, std::span<const Index> local_nodes) {
  const auto m = static_cast<Index>(local_nodes.size());
  Vector t(m * levels);
  for (int l = 0; l < levels; ++l)
    for (Index i = 0; i < m; ++i) t[l * m + i] = x[l * num_nodes + local_nodes[i]];
  return t;
}

bool keep_snapshot(const MarchConfig& config, Index step, Index last) {
  if (step == 0 || step == last) return true;
  if (config.snapshot_every > 0 && step % config.snapshot_every == 0) return true;
  return std::find(config.snapshot_steps.begin(), config.snapshot_steps.end(), step) !=
         config.snapshot_steps.end();
}

void record_step(Trajectory& traj, const Grid& grid, const MarchConfig& config,
                 const ProblemSetup& setup, Index step, const Vector& state, StepRecord record) {
  const StepSummary s = compute_step_diagnostics(grid, state);
  record.step = step;
  record.t = setup.time_level(step);
  record.integral = s.integral;
  record.min = s.min;
  record.max = s.max;
  traj.log.steps.push_back(record);
  if (keep_snapshot(config, step, setup.n_slabs)) traj.snapshots.push_back({step, record.t, state});
  if (config.on_step) config.on_step(step, record.t, state);
}

}  // namespace

Trajectory march_monodomain(const Grid& grid, const ProblemSetup& setup, const MarchConfig& config) {
  setup.validate();
  config.validate();
  const bool steady = !setup.velocity.time_dependent && !setup.has_source();

  Trajectory traj;
  Vector state = interpolate_initial(grid, setup);
  record_step(traj, grid, config, setup, 0, state, {});

  ConstrainedSlab slab;
  std::vector<Index> inflow;
  bool built = false;
  for (Index k = 1; k <= setup.n_slabs; ++k) {
    const double t_mid = setup.slab_midpoint(k);
    if (!built || !steady) {
      slab.system = assemble_slab(grid, setup, k, config.assembly);
      inflow = classify_inflow_boundary(grid, setup.velocity, t_mid, config.eps);
      slab.set_layout(inflow, {});
      built = true;
    }
    for (std::size_t c = 0; c < slab.nodes.size(); ++c) {
      const Point& p = grid.nodes[slab.nodes[c]];
      slab.inflow_values[static_cast<Index>(c)] = setup.inflow_at(p.x(), p.y(), t_mid);
    }

    StepRecord record;
    const Vector x = slab.solve(slab.system.rhs(state), Vector(), replicate_levels(state, slab.system.levels),
                                config.pcg, k, record.pcg_iterations);
    state = end_level(x, grid.num_nodes());
    record_step(traj, grid, config, setup, k, state, record);
  }
  return traj;
}

namespace {

struct Subdomain {
  int id = 1;
  std::span<const Index> global_nodes;
  ConstrainedSlab slab;
  std::vector<Index> dirichlet_global;  // interface nodes receiving data
  std::vector<Index> dirichlet_local;
  Vector state;    // local, slab start
  Vector iterate;  // local, all levels
};

}  // namespace

Trajectory march_ddm(const Grid& grid, const Partition& partition_in, const ProblemSetup& setup,
                     const MarchConfig& config) {
  setup.validate();
  config.validate();
  const bool steady = !setup.velocity.time_dependent && !setup.has_source();

  Partition partition = partition_in;
  std::array<Subdomain, 2> sub;
  const Vector initial = interpolate_initial(grid, setup);
  for (int s = 0; s < 2; ++s) {
    sub[s].id = s + 1;
    sub[s].state.resize(static_cast<Index>(partition.nodes_of[s].size()));
    for (std::size_t i = 0; i < partition.nodes_of[s].size(); ++i)
      sub[s].state[static_cast<Index>(i)] = initial[partition.nodes_of[s][i]];
  }

  auto stitch = [&]() {
    Vector global(grid.num_nodes());
    for (int s = 1; s >= 0; --s)  // subdomain 1 written last wins at the interface
      for (std::size_t i = 0; i < partition.nodes_of[s].size(); ++i)
        global[partition.nodes_of[s][i]] = sub[s].state[static_cast<Index>(i)];
    return global;
  };

  Trajectory traj;
  record_step(traj, grid, config, setup, 0, stitch(), {});

  bool built = false;
  for (Index k = 1; k <= setup.n_slabs; ++k) {
    const double t_mid = setup.slab_midpoint(k);
    if (!built || !steady) {
      if (setup.velocity.time_dependent)
        partition = classify_interface(grid, partition.split_x, setup.velocity, t_mid, config.eps,
                                       partition.first);
      const std::vector<Index> inflow =
          classify_inflow_boundary(grid, setup.velocity, t_mid, config.eps);
      for (int s = 0; s < 2; ++s) {
        Subdomain& d = sub[s];
        d.global_nodes = partition.nodes_of[s];
        d.slab.system = assemble_subdomain_slab(grid, partition, d.id, setup, k, config.assembly);
        d.dirichlet_global = interface_dirichlet_nodes(partition, d.id, inflow);
        d.dirichlet_local.clear();
        for (Index n : d.dirichlet_global) d.dirichlet_local.push_back(partition.local_index(d.id, n));
        std::vector<Index> inflow_local;
        for (Index n : inflow) {
          const Index l = partition.local_index(d.id, n);
          if (l >= 0) inflow_local.push_back(l);
        }
        d.slab.set_layout(inflow_local, d.dirichlet_local);
      }
      built = true;
    }

    const int levels = sub[0].slab.system.levels;
    std::array<Vector, 2> base_rhs;
    // Local indices, inside subdomain `other`, of the nodes where `s` takes data.
    std::array<std::vector<Index>, 2> source_local;
    for (int s = 0; s < 2; ++s) {
      Subdomain& d = sub[s];
      for (std::size_t c = 0; c < d.slab.nodes.size(); ++c) {
        const Point& p = grid.nodes[d.global_nodes[d.slab.nodes[c]]];
        d.slab.inflow_values[static_cast<Index>(c)] = setup.inflow_at(p.x(), p.y(), t_mid);
      }
      base_rhs[s] = d.slab.system.rhs(d.state);
      d.iterate = replicate_levels(d.state, levels);
      const int other = 1 - s;
      source_local[s].clear();
      for (Index n : d.dirichlet_global) source_local[s].push_back(partition.local_index(other + 1, n));
    }

    auto data_for = [&](int s) {
      const Subdomain& o = sub[1 - s];
      return trace(o.iterate, o.slab.system.num_nodes, levels, source_local[s]);
    };

    StepRecord record;
    auto solve_sub = [&](int s, const Vector& data) {
      Subdomain& d = sub[s];
      d.iterate = d.slab.solve(base_rhs[s], data, d.iterate, config.pcg, k, record.pcg_iterations);
    };

    auto sweep = [&]() {
      if (config.update == DdmUpdate::jacobi) {
        const Vector data1 = data_for(0);
        const Vector data2 = data_for(1);
        solve_sub(0, data1);
        solve_sub(1, data2);
      } else {
        solve_sub(0, data_for(0));
        solve_sub(1, data_for(1));
      }
    };

    // Exchanged outflow traces: subdomain 1 on the nodes subdomain 2 takes
    // as data, and vice versa.
    auto exchanged = [&]() { return std::array<Vector, 2>{data_for(1), data_for(0)}; };

    auto weighted_norm = [&]() {
      double norm = 0.0;
      for (int s = 0; s < 2; ++s) {
        const Subdomain& receiver = sub[1 - s];
        const Subdomain& sender = sub[s];
        for (std::size_t i = 0; i < receiver.dirichlet_global.size(); ++i) {
          const Index g = receiver.dirichlet_global[i];
          const double flux = std::abs(setup.velocity(grid.nodes[g], t_mid).dot(partition.normal));
          const double c = sender.iterate[(levels - 1) * sender.slab.system.num_nodes +
                                          source_local[1 - s][i]];
          norm += flux * c * c;
        }
      }
      return norm;
    };

    // Iterate 0: both subdomains solved with interface data carried over from
    // the previous slab.
    sweep();
    std::array<Vector, 2> traces = exchanged();
    record.interface_norm_first = weighted_norm();
    record.interface_norm_max = record.interface_norm_first;

    Index iterations = 0;
    while (true) {
      if (iterations >= config.max_ddm_iter)
        throw SolverError(k, "interface iteration did not converge in " +
                                 std::to_string(config.max_ddm_iter) + " sweeps");
      sweep();
      ++iterations;
      const std::array<Vector, 2> next = exchanged();
      double change = 0.0;
      for (int s = 0; s < 2; ++s)
        if (next[s].size()) change = std::max(change, (next[s] - traces[s]).cwiseAbs().maxCoeff());
      traces = next;
      record.interface_norm_max = std::max(record.interface_norm_max, weighted_norm());
      if (change <= config.tol_interface) break;
    }
    record.ddm_iterations = iterations;

    for (int s = 0; s < 2; ++s) sub[s].state = end_level(sub[s].iterate, sub[s].slab.system.num_nodes);
    for (Index g : partition.gamma_zero) {
      const double c1 = sub[0].state[partition.local_index(1, g)];
      const double c2 = sub[1].state[partition.local_index(2, g)];
      record.gamma_zero_gap = std::max(record.gamma_zero_gap, std::abs(c1 - c2));
    }
    record_step(traj, grid, config, setup, k, stitch(), record);
  }
  return traj;
}

SplitCheckResult ddm_homogeneous_split_check(const Grid& grid, const Partition& partition,
                                             const ProblemSetup& setup, Index k, int subdomain,
                                             const Vector& eta, const Vector& previous,
                                             const MarchConfig& config) {
  setup.validate();
  config.validate();
  if (subdomain != 1 && subdomain != 2) throw std::invalid_argument("subdomain must be 1 or 2");
  const auto s = static_cast<std::size_t>(subdomain - 1);
  const double t_mid = setup.slab_midpoint(k);

  ConstrainedSlab slab;
  slab.system = assemble_subdomain_slab(grid, partition, subdomain, setup, k, config.assembly);
  const Index n_local = slab.system.num_nodes;
  const int levels = slab.system.levels;

  const std::vector<Index> inflow = classify_inflow_boundary(grid, setup.velocity, t_mid, config.eps);
  std::vector<Index> inflow_local;
  for (Index n : inflow) {
    const Index l = partition.local_index(subdomain, n);
    if (l >= 0) inflow_local.push_back(l);
  }
  std::vector<Index> iface_local;
  for (Index n : interface_dirichlet_nodes(partition, subdomain, inflow))
    iface_local.push_back(partition.local_index(subdomain, n));
  if (eta.size() != static_cast<Index>(iface_local.size()) * levels)
    throw std::invalid_argument("interface data has " + std::to_string(eta.size()) +
                                " entries, expected " +
                                std::to_string(iface_local.size() * levels));
  slab.set_layout(inflow_local, iface_local);

  Vector start = previous;
  if (start.size() == 0) {
    start.resize(n_local);
    for (Index i = 0; i < n_local; ++i) {
      const Point& p = grid.nodes[partition.nodes_of[s][i]];
      start[i] = setup.initial(p.x(), p.y());
    }
  }
  if (start.size() != n_local) throw std::invalid_argument("previous state size mismatch");

  Vector true_inflow(static_cast<Index>(slab.nodes.size()));
  for (std::size_t c = 0; c < slab.nodes.size(); ++c) {
    const Point& p = grid.nodes[partition.nodes_of[s][slab.nodes[c]]];
    true_inflow[static_cast<Index>(c)] = setup.inflow_at(p.x(), p.y(), t_mid);
  }

  PcgOptions pcg = config.pcg;
  Index iterations = 0;
  const Vector zero_guess = Vector::Zero(n_local * levels);
  const Vector full_rhs = slab.system.rhs(start);

  SplitCheckResult out;
  slab.inflow_values = true_inflow;
  out.direct = slab.solve(full_rhs, eta, zero_guess, pcg, k, iterations);

  // Zero inflow, zero start values, zero source, interface data eta.
  slab.inflow_values.setZero();
  out.stils_homogeneous = slab.solve(zero_guess, eta, zero_guess, pcg, k, iterations);

  // True inflow, start values and source, zero interface data.
  slab.inflow_values = true_inflow;
  out.dirichlet_homogeneous =
      slab.solve(full_rhs, Vector::Zero(eta.size()), zero_guess, pcg, k, iterations);

  out.residual = (out.direct - out.stils_homogeneous - out.dirichlet_homogeneous).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace stils
