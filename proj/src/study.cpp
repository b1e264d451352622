#include "stils/study.hpp"

#include <chrono>
#include <fstream>

#include "stils/io.hpp"

namespace stils {

ModeResult run_mode(const RunConfig& config, Mode mode) {
  ModeResult r;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Grid grid = config.make_grid();
    const ProblemSetup setup = config.make_setup();
    MarchConfig mc = config.make_march_config();
    mc.snapshot_steps.clear();
    mc.snapshot_every = 0;
    const Trajectory traj =
        mode == Mode::stils
            ? march_monodomain(grid, setup, mc)
            : march_ddm(grid, classify_interface(grid, config.split_x, setup.velocity, 0.0, mc.eps),
                        setup, mc);
    r.min = traj.log.global_min();
    r.max = traj.log.global_max();
    r.relative_variation = relative_variation(traj.log);
    r.max_ddm_iterations = traj.log.max_ddm_iterations();
    r.slot_contrast = slot_contrast(grid, traj.final_snapshot().values);
    r.ok = true;
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

namespace {

StudyRow run_row(const RunConfig& config) {
  StudyRow row;
  row.n_slabs = config.resolved_slabs();
  row.tau = config.resolved_tau();
  row.nx = config.nx;
  row.ny = config.ny;
  row.elements = config.nx * config.ny;
  row.nodes = (config.nx + 1) * (config.ny + 1);
  row.stils = run_mode(config, Mode::stils);
  row.ddm = run_mode(config, Mode::ddm);
  return row;
}

std::ofstream open_csv(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  return out;
}

std::string status(const ModeResult& r) { return r.ok ? "ok" : "failed: " + r.error; }

std::string quoted(const std::string& s) {
  std::string q = "\"";
  for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace

std::vector<StudyRow> study_tau(const RunConfig& base, std::span<const Index> slab_counts) {
  std::vector<StudyRow> rows;
  for (Index m : slab_counts) {
    RunConfig c = base;
    c.tau.reset();
    c.slabs = m;
    rows.push_back(run_row(c));
  }
  return rows;
}

std::vector<StudyRow> study_h(const RunConfig& base, std::span<const Index> grid_sizes) {
  std::vector<StudyRow> rows;
  for (Index n : grid_sizes) {
    RunConfig c = base;
    c.nx = c.ny = n;
    rows.push_back(run_row(c));
  }
  return rows;
}

std::vector<Index> default_study_h_sizes(bool include_large) {
  std::vector<Index> sizes{40, 50, 60, 100};
  if (include_large) sizes.push_back(200);
  return sizes;
}

void write_study_tau_csv(const std::vector<StudyRow>& rows, const std::filesystem::path& path) {
  std::ofstream out = open_csv(path);
  out << "slabs,tau,ddm_max_iters,ddm_min,ddm_max,stils_min,stils_max,ddm_rel_var,stils_rel_var,"
         "ddm_slot_contrast,stils_slot_contrast,ddm_status,stils_status\n";
  for (const auto& r : rows) {
    out << r.n_slabs << ',' << format_real(r.tau) << ',' << r.ddm.max_ddm_iterations << ','
        << format_real(r.ddm.min) << ',' << format_real(r.ddm.max) << ','
        << format_real(r.stils.min) << ',' << format_real(r.stils.max) << ','
        << format_real(r.ddm.relative_variation) << ',' << format_real(r.stils.relative_variation)
        << ',' << format_real(r.ddm.slot_contrast) << ',' << format_real(r.stils.slot_contrast)
        << ',' << quoted(status(r.ddm)) << ',' << quoted(status(r.stils)) << '\n';
  }
  if (!out) throw IoError(path, "write failed");
}

void write_study_h_csv(const std::vector<StudyRow>& rows, const std::filesystem::path& path) {
  std::ofstream out = open_csv(path);
  out << "elements,nodes,ddm_max_iters,ddm_min,ddm_max,ddm_rel_var,stils_min,stils_max,"
         "stils_rel_var,ddm_status,stils_status\n";
  for (const auto& r : rows) {
    out << r.elements << ',' << r.nodes << ',' << r.ddm.max_ddm_iterations << ','
        << format_real(r.ddm.min) << ',' << format_real(r.ddm.max) << ','
        << format_real(r.ddm.relative_variation) << ',' << format_real(r.stils.min) << ','
        << format_real(r.stils.max) << ',' << format_real(r.stils.relative_variation) << ','
        << quoted(status(r.ddm)) << ',' << quoted(status(r.stils)) << '\n';
  }
  if (!out) throw IoError(path, "write failed");
}

}  // namespace stils
