#pragma once

#include <filesystem>
#include <vector>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "stils/fields.hpp"
#include "stils/mesh.hpp"
#include "stils/solver.hpp"

namespace stils {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { stils, ddm };

/// Everything needed for one slotted-cylinder run or study.
struct RunConfig {
  Index nx = 100;
  Index ny = 100;
  Extents extents{-1.0, 1.0, -1.0, 1.0};
  double final_time = 0.0;  // 0 selects 2 pi
  std::optional<double> tau;
  std::optional<Index> slabs;
  SlottedCylinderParams cylinder;
  double split_x = 0.0;
  Mode mode = Mode::stils;
  TimeOrder basis = TimeOrder::q1;
  DdmUpdate update = DdmUpdate::jacobi;
  double tol_interface = 1e-8;
  double tol_pcg = 1e-10;
  Index max_ddm_iter = 50;
  std::filesystem::path out = "out";
  Index snap_every = 0;
  bool include_large = false;  // 200 x 200 row of the h study

  double resolved_final_time() const;
  /// Slab count from `slabs`, or from `tau` (which must divide the final
  /// time), or 800 by default. Throws ConfigError when both are set.
  Index resolved_slabs() const;
  double resolved_tau() const { return resolved_final_time() / static_cast<double>(resolved_slabs()); }

  Grid make_grid() const;
  ProblemSetup make_setup() const;
  /// Default snapshots are steps M/8, M/2, 5M/8 and M, i.e. 100, 400, 500
  /// and 800 of 800.
  MarchConfig make_march_config() const;

  void validate() const;
};

/// Real number, also accepting multiples and fractions of pi such as
/// "2pi/800", "pi", "0.5*pi".
double parse_real(std::string_view text);

struct ConfigEntry {
  std::string key;  // normalized to '-' separators
  std::string value;
  int line = 0;
};

/// `key = value` lines in file order, '#' starts a comment. Throws
/// ConfigError with the file name and line number on malformed lines.
std::vector<ConfigEntry> parse_key_value_file(const std::filesystem::path& path);

/// Keys match the long CLI flag names with '-' or '_' (nx, ny, tau, slabs,
/// radius, mode, basis, tol-interface, tol-pcg, out, snap-every, ...).
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

Mode parse_mode(std::string_view text);
TimeOrder parse_basis(std::string_view text);
const char* to_string(Mode mode);

}  // namespace stils
