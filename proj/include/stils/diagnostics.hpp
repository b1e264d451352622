#pragma once

#include <vector>

#include "stils/mesh.hpp"
#include "stils/types.hpp"

namespace stils {

struct StepSummary {
  double integral = 0.0;
  double min = 0.0;
  double max = 0.0;
};

/// Integral of the bilinear interpolant (2x2 Gauss per element) and nodal
/// extrema.
StepSummary compute_step_diagnostics(const Grid& grid, const Vector& state);

struct StepRecord {
  Index step = 0;
  double t = 0.0;
  double integral = 0.0;
  double min = 0.0;
  double max = 0.0;
  Index ddm_iterations = 0;
  Index pcg_iterations = 0;
  // Weighted outflow-trace norms sum |u.n| c^2 of the exchanged interface
  // traces, for the first and the largest interface iterate of the slab.
  double interface_norm_first = 0.0;
  double interface_norm_max = 0.0;
  // max |c1 - c2| over characteristic (u.n = 0) interface nodes.
  double gamma_zero_gap = 0.0;
};

struct DiagnosticsLog {
  std::vector<StepRecord> steps;

  double global_min() const;
  double global_max() const;
  Index max_ddm_iterations() const;
  Index total_pcg_iterations() const;
};

/// (max_k I_k - min_k I_k) / min_k I_k over every logged step including step
/// 0. NaN when min_k I_k <= 0. Throws std::invalid_argument with fewer than
/// two steps.
double relative_variation(const DiagnosticsLog& log);

/// max - min of nodal values in the box |x - x_center| <= half_width,
/// y in [y_low, y_high]. Defaults cover the slot cross-section of the
/// slotted-cylinder benchmark.
double slot_contrast(const Grid& grid, const Vector& state, double x_center = 0.0,
                     double half_width = 0.1, double y_low = 0.5, double y_high = 0.7);

}  // namespace stils
