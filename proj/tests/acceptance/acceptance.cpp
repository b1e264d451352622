// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "stils/cli.hpp"
#include "stils/config.hpp"
#include "stils/pcg.hpp"
#include "stils/solver.hpp"
#include "stils/study.hpp"

using namespace stils;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(const std::string& id, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << (pass ? "PASS " : "FAIL ") << id << ": " << detail << std::endl;
}

void info(const std::string& text) { std::cout << "  " << text << std::endl; }

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

const Extents kSquare{-1, 1, -1, 1};

// 1
void equivalence() {
  Stopwatch clock;
  const Grid g = build_grid(20, 20, kSquare);
  const ProblemSetup s = slotted_cylinder_setup({}, 2 * M_PI, 50);
  MarchConfig c;
  c.tol_interface = 1e-10;
  c.pcg.tol = 1e-12;
  c.snapshot_every = 1;
  const Trajectory mono = march_monodomain(g, s, c);
  const Trajectory ddm = march_ddm(g, classify_interface(g, 0.0, s.velocity, 0.0), s, c);
  double gap = 0.0;
  for (const auto& snap : mono.snapshots)
    gap = std::max(gap, (snap.values - ddm.find(snap.step)->values).cwiseAbs().maxCoeff());
  const double t = clock.seconds();
  report("1 equivalence", gap <= 1e-6 && t <= 30.0,
         "max |STILS - DDM| = " + num(gap) + " (limit 1e-6), " + num(t) + " s (limit 30 s)");
}

RunConfig benchmark(Index n) {
  RunConfig c;
  c.nx = c.ny = n;
  c.out = fs::temp_directory_path() / "stils_acceptance";
  return c;
}

struct SweepCheck {
  bool decreasing = true;
  bool stils_le_ddm = true;
  bool iterations = true;
  bool bracket = true;
  bool all_ok = true;
  Index max_iter = 0;
  double lo = 0.0, hi = 0.0;
};

SweepCheck check_sweep(const std::vector<StudyRow>& rows) {
  SweepCheck r;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const StudyRow& row = rows[i];
    r.all_ok = r.all_ok && row.stils.ok && row.ddm.ok;
    if (i > 0) {
      r.decreasing = r.decreasing && row.stils.relative_variation < rows[i - 1].stils.relative_variation &&
                     row.ddm.relative_variation < rows[i - 1].ddm.relative_variation;
    }
    if (row.tau <= 2 * M_PI / 100 * (1 + 1e-12))
      r.stils_le_ddm = r.stils_le_ddm && row.stils.relative_variation <= row.ddm.relative_variation;
    r.max_iter = std::max(r.max_iter, row.ddm.max_ddm_iterations);
    r.iterations = r.iterations && row.ddm.max_ddm_iterations <= 5;
    r.lo = std::min({r.lo, row.stils.min, row.ddm.min});
    r.hi = std::max({r.hi, row.stils.max, row.ddm.max});
  }
  r.bracket = r.lo >= -0.5 && r.hi <= 1.5;
  return r;
}

void print_rows(const std::vector<StudyRow>& rows) {
  for (const auto& row : rows) {
    info("M = " + std::to_string(row.n_slabs) + ": relvar STILS " + num(row.stils.relative_variation) +
         ", DDM " + num(row.ddm.relative_variation) + "; iters " + std::to_string(row.ddm.max_ddm_iterations) +
         "; (min, max) STILS (" + num(row.stils.min) + ", " + num(row.stils.max) + "), DDM (" +
         num(row.ddm.min) + ", " + num(row.ddm.max) + ")");
    if (!row.stils.ok) info("STILS failed: " + row.stils.error);
    if (!row.ddm.ok) info("DDM failed: " + row.ddm.error);
  }
}

// 2 and 3
void table_trends() {
  Stopwatch full_clock;
  const std::vector<StudyRow> full = study_tau(benchmark(100), kStudyTauSlabs);
  const double full_t = full_clock.seconds();
  print_rows(full);
  const SweepCheck f = check_sweep(full);

  Stopwatch reduced_clock;
  const std::vector<StudyRow> reduced = study_tau(benchmark(40), kStudyTauSlabs);
  const double reduced_t = reduced_clock.seconds();
  info("reduced sweep, h = 2/40:");
  print_rows(reduced);
  const SweepCheck r = check_sweep(reduced);

  const StudyRow& last = full.back();
  const auto within5 = [](double v, double ref) { return v >= ref / 5 && v <= ref * 5; };
  const bool c_stils = within5(last.stils.relative_variation, 1.44e-4);
  const bool c_ddm = within5(last.ddm.relative_variation, 7.44e-4);

  std::ostringstream d;
  d << "(a) decreasing in tau " << (f.decreasing ? "yes" : "no") << "; (b) STILS <= DDM "
    << (f.stils_le_ddm ? "yes" : "no") << "; (c) at 2pi/800 STILS " << num(last.stils.relative_variation)
    << " vs 1.44e-4 " << (c_stils ? "ok" : "off") << ", DDM " << num(last.ddm.relative_variation)
    << " vs 7.44e-4 " << (c_ddm ? "ok" : "off") << "; (d) max iters " << f.max_iter << " (limit 5); "
    << num(full_t) << " s (limit 1800 s); reduced: (a) " << (r.decreasing ? "yes" : "no") << ", (b) "
    << (r.stils_le_ddm ? "yes" : "no") << ", (d) " << r.max_iter << ", " << num(reduced_t)
    << " s (limit 180 s)";
  report("2 table trends",
         f.all_ok && r.all_ok && f.decreasing && f.stils_le_ddm && c_stils && c_ddm && f.iterations &&
             full_t <= 1800 && r.decreasing && r.stils_le_ddm && r.iterations && reduced_t <= 180,
         d.str());

  report("3 extremum bracket", f.all_ok && f.bracket,
         "global (min, max) over all runs = (" + num(f.lo) + ", " + num(f.hi) + "), bracket [-0.5, 1.5]");
}

// 4
void constant_state() {
  double worst = 0.0;
  for (Index n : {10, 40, 100}) {
    const Grid g = build_grid(n, n, kSquare);
    ProblemSetup s = slotted_cylinder_setup({}, 2 * M_PI, 100);
    s.initial = [](double, double) { return 1.0; };
    s.inflow_value = [](double, double, double) { return 1.0; };
    MarchConfig c;
    const Trajectory mono = march_monodomain(g, s, c);
    const Trajectory ddm = march_ddm(g, classify_interface(g, 0.0, s.velocity, 0.0), s, c);
    worst = std::max({worst, (mono.final_snapshot().values.array() - 1.0).abs().maxCoeff(),
                      (ddm.final_snapshot().values.array() - 1.0).abs().maxCoeff()});
  }
  report("4 constant state", worst <= 1e-7,
         "max |c - 1| at final time = " + num(worst) + " on 10x10, 40x40, 100x100, both modes (limit 1e-7)");
}

// 5
void one_iteration() {
  bool exact = true;
  Index lo = 1000, hi = 0;
  for (Index n : {20, 100}) {
    const Grid g = build_grid(n, n, kSquare);
    ProblemSetup s = slotted_cylinder_setup({}, 1.0, 50);
    s.velocity = uniform_velocity({1, 0});
    const Trajectory t = march_ddm(g, classify_interface(g, 0.0, s.velocity, 0.0), s);
    for (std::size_t k = 1; k < t.log.steps.size(); ++k) {
      const Index it = t.log.steps[k].ddm_iterations;
      exact = exact && it == 1;
      lo = std::min(lo, it);
      hi = std::max(hi, it);
    }
  }
  report("5 one-iteration DDM", exact,
         "sweeps per slab in [" + std::to_string(lo) + ", " + std::to_string(hi) + "] (required exactly 1)");
}

// 6
void spd_and_solver() {
  double sym = 0.0, min_eig = 1e300;
  for (Index n : {2, 5, 10}) {
    const Grid g = build_grid(n, n, kSquare);
    const ProblemSetup s = slotted_cylinder_setup({}, 2 * M_PI, 50);
    const auto inflow = classify_inflow_boundary(g, s.velocity, s.slab_midpoint(1));
    for (TimeOrder order : {TimeOrder::q1, TimeOrder::q2}) {
      const SlabSystem sys = assemble_slab(g, s, 1, {order, 3});
      std::vector<Constraint> cons;
      for (Index node : inflow) cons.push_back({node, 0.0});
      std::vector<Index> dofs;
      for (const auto& c : constraints_on_levels(cons, sys.num_nodes, sys.levels)) dofs.push_back(c.node);
      const DirichletElimination elim(sys.lhs, dofs);
      const Eigen::MatrixXd a = oracle::to_dense(elim.matrix().matrix());
      sym = std::max(sym, (a - a.transpose()).cwiseAbs().maxCoeff());
      min_eig = std::min(min_eig, Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues().minCoeff());
    }
  }
  double pcg_err = 0.0;
  for (std::uint32_t seed : {1u, 2u, 3u}) {
    const Eigen::MatrixXd dense = oracle::random_spd(50, seed);
    const Vector b = Vector::LinSpaced(50, -1.0, 1.0);
    const auto r = pcg_solve(SparseSpd<double>(oracle::to_sparse(dense)), b, Vector(Vector::Zero(50)),
                             {1e-12, 0, Preconditioner::jacobi});
    pcg_err = std::max(pcg_err, (r.x - dense.partialPivLu().solve(b)).cwiseAbs().maxCoeff());
  }
  report("6 SPD and PCG", sym <= 1e-12 && min_eig > 0.0 && pcg_err <= 1e-8,
         "symmetry defect " + num(sym) + ", min eigenvalue " + num(min_eig) + ", PCG vs LU " + num(pcg_err));
}

// 7
void superposition() {
  const Grid g = build_grid(10, 5, kSquare);
  const ProblemSetup s = slotted_cylinder_setup({}, 2 * M_PI, 30);
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  double worst = 0.0;
  int instances = 0;
  for (TimeOrder order : {TimeOrder::q1, TimeOrder::q2}) {
    MarchConfig c;
    c.pcg.tol = 1e-13;
    c.assembly.order = order;
    const int levels = order == TimeOrder::q1 ? 1 : 2;
    for (Index k : {1, 9, 22}) {
      const double tm = s.slab_midpoint(k);
      const Partition p = classify_interface(g, 0.0, s.velocity, tm);
      const auto inflow = classify_inflow_boundary(g, s.velocity, tm);
      for (int sub : {1, 2}) {
        const Index nloc = static_cast<Index>(p.nodes_of[sub - 1].size());
        Vector prev(nloc), eta(levels * interface_dirichlet_nodes(p, sub, inflow).size());
        for (Index i = 0; i < nloc; ++i) prev[i] = d(rng);
        for (Index i = 0; i < eta.size(); ++i) eta[i] = d(rng);
        worst = std::max(worst, ddm_homogeneous_split_check(g, p, s, k, sub, eta, prev, c).residual);
        ++instances;
      }
    }
  }
  report("7 superposition", worst <= 1e-9,
         "max split residual " + num(worst) + " over " + std::to_string(instances) +
             " 5x5 subdomain instances (limit 1e-9)");
}

Vector read_vtk_scalars(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line) && line != "LOOKUP_TABLE default") {
  }
  std::vector<double> v;
  for (double x; in >> x;) v.push_back(x);
  return Eigen::Map<Vector>(v.data(), static_cast<Index>(v.size()));
}

// 8
void figure_run() {
  const fs::path dir = fs::temp_directory_path() / "stils_acceptance_full";
  fs::remove_all(dir);
  Stopwatch clock;
  std::ostringstream out, err;
  const int status = run_cli({"run", "--nx", "100", "--ny", "100", "--slabs", "800", "--out", dir.string()}, out, err);
  const double t = clock.seconds();
  int files = 0;
  for (const char* name : {"snapshot_00100.vtk", "snapshot_00400.vtk", "snapshot_00500.vtk", "snapshot_00800.vtk"})
    files += fs::exists(dir / name) ? 1 : 0;
  const Grid g = build_grid(100, 100, kSquare);
  double contrast = 0.0;
  if (status == 0) {
    const Vector final_state = read_vtk_scalars(dir / "final.vtk");
    if (final_state.size() == g.num_nodes()) contrast = slot_contrast(g, final_state);
  }
  report("8 full-scale run", status == 0 && files == 4 && contrast > 0.5,
         "exit " + std::to_string(status) + ", " + std::to_string(files) + "/4 snapshots, slot contrast " +
             num(contrast) + " (limit > 0.5), " + num(t) + " s");
}

// tau/h ordering of the slot contrast at equal h.
void stability_ordering() {
  RunConfig c = benchmark(40);
  c.slabs = 126;  // tau / h = 0.997
  const ModeResult coarse = run_mode(c, Mode::stils);
  c.slabs = 503;  // tau / h = 0.250
  const ModeResult fine = run_mode(c, Mode::stils);
  report("stability ordering", coarse.ok && fine.ok && coarse.slot_contrast < fine.slot_contrast,
         "slot contrast at tau/h = 1: " + num(coarse.slot_contrast) + ", at tau/h = 1/4: " +
             num(fine.slot_contrast) + " (40x40)");
}

}  // namespace

int main() {
  equivalence();
  table_trends();
  constant_state();
  one_iteration();
  spd_and_solver();
  superposition();
  figure_run();
  stability_ordering();
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
