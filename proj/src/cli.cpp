#include "stils/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

#include "stils/config.hpp"
#include "stils/io.hpp"
#include "stils/study.hpp"

namespace stils {

namespace {

struct FlagSet {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::string config_file;
  std::string list;
  bool include_large = false;
  CLI::Option* config_option = nullptr;
  CLI::Option* list_option = nullptr;
  CLI::Option* large_option = nullptr;
};

const std::vector<std::pair<std::string, std::string>> kValueFlags{
    {"nx", "elements along x"},
    {"ny", "elements along y"},
    {"tau", "slab width, e.g. 2pi/800 (exclusive with --slabs)"},
    {"slabs", "number of time slabs (exclusive with --tau)"},
    {"final-time", "final time, default 2pi"},
    {"radius", "slotted cylinder radius, default 0.3"},
    {"split-x", "interface abscissa, default 0"},
    {"mode", "stils or ddm"},
    {"basis", "time basis q1 or q2"},
    {"update", "interface update: jacobi or gauss-seidel"},
    {"tol-interface", "interface convergence tolerance"},
    {"tol-pcg", "relative PCG tolerance"},
    {"max-ddm-iter", "interface iteration limit per slab"},
    {"out", "output directory"},
    {"snap-every", "VTK snapshot stride (0: default snapshot steps)"},
};

void add_flags(CLI::App* sub, FlagSet& flags, bool study) {
  for (const auto& [name, help] : kValueFlags)
    flags.options[name] = sub->add_option("--" + name, flags.values[name], help);
  flags.config_option = sub->add_option("--config", flags.config_file, "key = value config file");
  if (study) {
    flags.list_option = sub->add_option("--list", flags.list,
                                        "comma-separated slab counts (study-tau) or grid sizes (study-h)");
    flags.large_option = sub->add_flag("--include-large", flags.include_large,
                                       "add the 200x200 row to study-h");
  }
}

RunConfig build_config(const FlagSet& flags) {
  RunConfig config;
  bool out_set = false;
  if (flags.config_option && flags.config_option->count()) {
    for (const auto& entry : parse_key_value_file(flags.config_file)) {
      try {
        apply_setting(config, entry.key, entry.value);
      } catch (const ConfigError& e) {
        throw ConfigError(flags.config_file + ":" + std::to_string(entry.line) + ": " + e.what());
      }
      if (entry.key == "out") out_set = true;
    }
  }
  const bool tau_flag = flags.options.at("tau")->count() > 0;
  const bool slabs_flag = flags.options.at("slabs")->count() > 0;
  if (tau_flag && slabs_flag) throw ConfigError("--tau and --slabs are mutually exclusive");
  if (tau_flag) config.slabs.reset();
  if (slabs_flag) config.tau.reset();
  for (const auto& [name, help] : kValueFlags) {
    if (!flags.options.at(name)->count()) continue;
    try {
      apply_setting(config, name, flags.values.at(name));
    } catch (const ConfigError& e) {
      throw ConfigError("--" + name + ": " + e.what());
    }
    if (name == "out") out_set = true;
  }
  if (!out_set) {
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) config.out = env;
  }
  if (flags.large_option && flags.include_large) config.include_large = true;
  config.validate();
  return config;
}

std::vector<Index> parse_list(const std::string& text) {
  std::vector<Index> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v < 1) throw std::invalid_argument(item);
      values.push_back(static_cast<Index>(v));
    } catch (const std::exception&) {
      throw ConfigError("--list: not a positive integer: '" + item + "'");
    }
  }
  if (values.empty()) throw ConfigError("--list is empty");
  return values;
}

void stability_warning(const RunConfig& c, const Grid& grid, std::ostream& err) {
  const double ratio = c.resolved_tau() / grid.mesh_size();
  if (ratio > 0.5) {
    err << "warning: tau/h = " << ratio
        << " exceeds 1/2; expect numerical diffusion of the solution\n";
  }
}

std::string snapshot_name(Index step) {
  std::string digits = std::to_string(step);
  if (digits.size() < 5) digits.insert(0, 5 - digits.size(), '0');
  return "snapshot_" + digits + ".vtk";
}

int do_run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Grid grid = c.make_grid();
  const ProblemSetup setup = c.make_setup();
  const MarchConfig mc = c.make_march_config();
  stability_warning(c, grid, err);

  const auto start = std::chrono::steady_clock::now();
  Trajectory traj;
  if (c.mode == Mode::stils) {
    traj = march_monodomain(grid, setup, mc);
  } else {
    const Partition partition = classify_interface(grid, c.split_x, setup.velocity, 0.0, mc.eps);
    traj = march_ddm(grid, partition, setup, mc);
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::filesystem::create_directories(c.out);
  export_diagnostics_csv(traj.log, c.out / "diagnostics.csv");
  for (const auto& snap : traj.snapshots)
    if (snap.step > 0) export_vtk(grid, snap.values, c.out / snapshot_name(snap.step));
  export_vtk(grid, traj.final_snapshot().values, c.out / "final.vtk");

  out << "mode " << to_string(c.mode) << ", basis " << to_string(c.basis) << ", grid " << c.nx
      << "x" << c.ny << ", slabs " << setup.n_slabs << ", tau " << setup.tau() << "\n"
      << "relative variation " << format_real(relative_variation(traj.log)) << "\n"
      << "global (min, max) (" << traj.log.global_min() << ", " << traj.log.global_max() << ")\n"
      << "slot contrast " << slot_contrast(grid, traj.final_snapshot().values) << "\n";
  if (c.mode == Mode::ddm) out << "max interface iterations " << traj.log.max_ddm_iterations() << "\n";
  out << "elapsed " << seconds << " s, output in " << c.out.string() << "\n";
  return 0;
}

void print_rows(const std::vector<StudyRow>& rows, std::ostream& out) {
  out << "slabs  grid     iters  ddm(min,max)      stils(min,max)    ddm relvar  stils relvar\n";
  for (const auto& r : rows) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%-6lld %-8s %-6lld (%.2f, %.2f)     (%.2f, %.2f)     %.3e   %.3e\n",
                  static_cast<long long>(r.n_slabs),
                  (std::to_string(r.nx) + "x" + std::to_string(r.ny)).c_str(),
                  static_cast<long long>(r.ddm.max_ddm_iterations), r.ddm.min, r.ddm.max,
                  r.stils.min, r.stils.max, r.ddm.relative_variation, r.stils.relative_variation);
    out << buf;
    if (!r.ddm.ok) out << "  ddm failed: " << r.ddm.error << "\n";
    if (!r.stils.ok) out << "  stils failed: " << r.stils.error << "\n";
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Space-time least-squares transport solver with two-subdomain decomposition", "stils"};
  app.require_subcommand(1);

  FlagSet run_flags, ddm_flags, tau_flags, h_flags;
  CLI::App* run = app.add_subcommand("run", "time-marching run (monodomain unless --mode ddm)");
  CLI::App* ddm = app.add_subcommand("ddm-run", "two-subdomain time-marching run");
  CLI::App* tau = app.add_subcommand("study-tau", "slab-width study, both modes");
  CLI::App* h = app.add_subcommand("study-h", "grid-size study, both modes");
  add_flags(run, run_flags, false);
  add_flags(ddm, ddm_flags, false);
  add_flags(tau, tau_flags, true);
  add_flags(h, h_flags, true);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (run->parsed()) return do_run(build_config(run_flags), out, err);
    if (ddm->parsed()) {
      RunConfig c = build_config(ddm_flags);
      if (ddm_flags.options.at("mode")->count() && c.mode != Mode::ddm)
        throw ConfigError("ddm-run cannot be combined with --mode stils");
      c.mode = Mode::ddm;
      return do_run(c, out, err);
    }
    const bool tau_study = tau->parsed();
    const FlagSet& flags = tau_study ? tau_flags : h_flags;
    if (flags.options.at("mode")->count())
      throw ConfigError("studies always run both modes; --mode is not accepted");
    RunConfig c = build_config(flags);
    const Grid probe = c.make_grid();
    std::vector<StudyRow> rows;
    if (tau_study) {
      const std::vector<Index> list =
          flags.list_option->count() ? parse_list(flags.list) : kStudyTauSlabs;
      for (Index m : list)
        if (c.resolved_final_time() / m / probe.mesh_size() > 0.5)
          err << "warning: slabs " << m << " gives tau/h > 1/2; expect numerical diffusion\n";
      rows = study_tau(c, list);
      write_study_tau_csv(rows, c.out / "study_tau.csv");
    } else {
      const std::vector<Index> list =
          flags.list_option->count() ? parse_list(flags.list) : default_study_h_sizes(c.include_large);
      rows = study_h(c, list);
      write_study_h_csv(rows, c.out / "study_h.csv");
    }
    print_rows(rows, out);
    const bool all_ok = std::all_of(rows.begin(), rows.end(),
                                    [](const StudyRow& r) { return r.stils.ok && r.ddm.ok; });
    return all_ok ? 0 : 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace stils
