#include "stils/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/LU>

#include "stils/element.hpp"
#include "stils/quadrature.hpp"

namespace stils {

StepSummary compute_step_diagnostics(const Grid& grid, const Vector& state) {
  if (state.size() != grid.num_nodes())
    throw std::invalid_argument("state has " + std::to_string(state.size()) +
                                " entries, grid has " + std::to_string(grid.num_nodes()) +
                                " nodes");
  const GaussRule rule = gauss_legendre(2);
  StepSummary s;
  for (Index e = 0; e < grid.num_elements(); ++e) {
    const auto vertices = grid.element_vertices(e);
    const auto& conn = grid.elements[static_cast<std::size_t>(e)];
    Eigen::Matrix<double, 2, 4> coords;
    Eigen::Vector4d values;
    for (int a = 0; a < 4; ++a) {
      coords.col(a) = vertices[a];
      values[a] = state[conn[a]];
    }
    for (int gx = 0; gx < 2; ++gx) {
      for (int gy = 0; gy < 2; ++gy) {
        const double xi = rule.points[gx];
        const double eta = rule.points[gy];
        const double det = (coords * q1_shape_gradients(xi, eta)).determinant();
        s.integral += rule.weights[gx] * rule.weights[gy] * det * q1_shape(xi, eta).dot(values);
      }
    }
  }
  s.min = state.size() ? state.minCoeff() : 0.0;
  s.max = state.size() ? state.maxCoeff() : 0.0;
  return s;
}

double DiagnosticsLog::global_min() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& r : steps) m = std::min(m, r.min);
  return m;
}

double DiagnosticsLog::global_max() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& r : steps) m = std::max(m, r.max);
  return m;
}

Index DiagnosticsLog::max_ddm_iterations() const {
  Index m = 0;
  for (const auto& r : steps) m = std::max(m, r.ddm_iterations);
  return m;
}

Index DiagnosticsLog::total_pcg_iterations() const {
  Index m = 0;
  for (const auto& r : steps) m += r.pcg_iterations;
  return m;
}

double relative_variation(const DiagnosticsLog& log) {
  if (log.steps.size() < 2)
    throw std::invalid_argument("relative variation needs at least two logged steps");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& r : log.steps) {
    lo = std::min(lo, r.integral);
    hi = std::max(hi, r.integral);
  }
  if (!(lo > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return (hi - lo) / lo;
}

double slot_contrast(const Grid& grid, const Vector& state, double x_center, double half_width,
                     double y_low, double y_high) {
  if (state.size() != grid.num_nodes()) throw std::invalid_argument("state/grid size mismatch");
  const double slack = 1e-12;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (Index n = 0; n < grid.num_nodes(); ++n) {
    const Point& p = grid.nodes[n];
    if (std::abs(p.x() - x_center) <= half_width + slack && p.y() >= y_low - slack &&
        p.y() <= y_high + slack) {
      lo = std::min(lo, state[n]);
      hi = std::max(hi, state[n]);
    }
  }
  if (lo > hi) throw std::invalid_argument("slot cross-section contains no grid nodes");
  return hi - lo;
}

}  // namespace stils
