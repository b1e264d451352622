#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "stils/assembly.hpp"
#include "stils/diagnostics.hpp"
#include "stils/fields.hpp"
#include "stils/mesh.hpp"
#include "stils/pcg.hpp"

namespace stils {

enum class DdmUpdate {
  jacobi,        // both subdomains read interface iterate j
  gauss_seidel,  // subdomain 2 reads the fresh iterate j + 1 of subdomain 1
};

struct Snapshot {
  Index step = 0;
  double t = 0.0;
  Vector values;
};

struct MarchConfig {
  double tol_interface = 1e-8;  // max nodal change of exchanged traces
  Index max_ddm_iter = 50;
  PcgOptions pcg;
  AssemblyOptions assembly;
  DdmUpdate update = DdmUpdate::jacobi;
  double eps = 1e-12;  // sign tolerance for inflow and interface classification

  // Step 0 and the final step are always kept.
  Index snapshot_every = 0;
  std::vector<Index> snapshot_steps;

  /// Called after every step (including step 0) with the global field.
  std::function<void(Index step, double t, const Vector& state)> on_step;

  void validate() const;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  DiagnosticsLog log;

  const Snapshot& final_snapshot() const { return snapshots.back(); }
  const Snapshot* find(Index step) const;
};

/// Fatal failure of a time-marching run: PCG non-convergence or too many
/// interface iterations.
class SolverError : public std::runtime_error {
 public:
  SolverError(Index slab, const std::string& what);
  Index slab() const { return slab_; }

 private:
  Index slab_;
};

/// Nodal interpolation of the initial condition.
Vector interpolate_initial(const Grid& grid, const ProblemSetup& setup);

Trajectory march_monodomain(const Grid& grid, const ProblemSetup& setup,
                            const MarchConfig& config = {});

/// Two-subdomain run with the iteration-by-subdomain scheme. Interface node
/// classes are recomputed per slab (at the slab midpoint) when the velocity
/// is time dependent.
Trajectory march_ddm(const Grid& grid, const Partition& partition, const ProblemSetup& setup,
                     const MarchConfig& config = {});

/// Nodes of `subdomain` that receive interface Dirichlet data: gamma_minus for
/// subdomain 1, gamma_plus for subdomain 2, minus nodes already held by the
/// physical inflow condition. Sorted by global id.
std::vector<Index> interface_dirichlet_nodes(const Partition& partition, int subdomain,
                                             std::span<const Index> inflow_nodes);

struct SplitCheckResult {
  double residual = 0.0;  // max nodal |direct - (homogeneous + particular)|
  Vector direct;          // subdomain-local solution, all levels
  Vector stils_homogeneous;
  Vector dirichlet_homogeneous;
};

/// Solves one subdomain slab problem directly and as the sum of a part with
/// zero inflow data, zero source and zero start values carrying the interface
/// data `eta`, plus a part with the true inflow, source and start values and
/// zero interface data.
///
/// `eta` is ordered level-major over interface_dirichlet_nodes(). `previous`
/// is the subdomain-local state at the slab start; empty selects the
/// interpolated initial condition.
SplitCheckResult ddm_homogeneous_split_check(const Grid& grid, const Partition& partition,
                                             const ProblemSetup& setup, Index k, int subdomain,
                                             const Vector& eta, const Vector& previous = {},
                                             const MarchConfig& config = {});

}  // namespace stils
