#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "stils/diagnostics.hpp"
#include "stils/mesh.hpp"

namespace stils {

class IoError : public std::runtime_error {
 public:
  IoError(const std::filesystem::path& path, const std::string& what)
      : std::runtime_error(path.string() + ": " + what) {}
};

inline constexpr std::string_view kDiagnosticsCsvHeader =
    "step,t,integral,min,max,ddm_iters,pcg_iters";

/// Legacy ASCII VTK structured grid with one point scalar "concentration".
void export_vtk(const Grid& grid, const Vector& state, const std::filesystem::path& path,
                std::string_view title = "STILS concentration");

/// One row per logged step, then a footer row
/// `summary,,<relative variation>,<global min>,<global max>,<max ddm iters>,<total pcg iters>`.
/// An undefined relative variation is written as NaN.
void export_diagnostics_csv(const DiagnosticsLog& log, const std::filesystem::path& path);

/// Shortest round-trip decimal representation.
std::string format_real(double value);

}  // namespace stils
