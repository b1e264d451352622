#include "stils/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace stils {

std::string format_real(double value) {
  if (std::isnan(value)) return "NaN";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError(path, "cannot create parent directory: " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

}  // namespace

void export_vtk(const Grid& grid, const Vector& state, const std::filesystem::path& path,
                std::string_view title) {
  if (state.size() != grid.num_nodes()) throw IoError(path, "state size does not match grid");
  std::ofstream out = open_output(path);
  const Index n = grid.num_nodes();
  out << "# vtk DataFile Version 3.0\n"
      << title << "\n"
      << "ASCII\n"
      << "DATASET STRUCTURED_GRID\n"
      << "DIMENSIONS " << grid.nx + 1 << ' ' << grid.ny + 1 << " 1\n"
      << "POINTS " << n << " double\n";
  for (const Point& p : grid.nodes) out << format_real(p.x()) << ' ' << format_real(p.y()) << " 0\n";
  out << "POINT_DATA " << n << "\n"
      << "SCALARS concentration double 1\n"
      << "LOOKUP_TABLE default\n";
  for (Index i = 0; i < n; ++i) out << format_real(state[i]) << '\n';
  finish(out, path);
}

void export_diagnostics_csv(const DiagnosticsLog& log, const std::filesystem::path& path) {
  std::ofstream out = open_output(path);
  out << kDiagnosticsCsvHeader << '\n';
  for (const auto& r : log.steps) {
    out << r.step << ',' << format_real(r.t) << ',' << format_real(r.integral) << ','
        << format_real(r.min) << ',' << format_real(r.max) << ',' << r.ddm_iterations << ','
        << r.pcg_iterations << '\n';
  }
  const double rv = log.steps.size() >= 2 ? relative_variation(log) : std::nan("");
  out << "summary,," << format_real(rv) << ',' << format_real(log.global_min()) << ','
      << format_real(log.global_max()) << ',' << log.max_ddm_iterations() << ','
      << log.total_pcg_iterations() << '\n';
  finish(out, path);
}

}  // namespace stils
