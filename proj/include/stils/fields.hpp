#pragma once

#include <functional>

#include "stils/types.hpp"

namespace stils {

/// Spatial velocity u(x, y, t). The space-time velocity is (u, 1).
struct VelocityField {
  std::function<Point(double x, double y, double t)> evaluator;
  bool divergence_free = false;
  /// False when u does not depend on t, which lets drivers reuse slab systems.
  bool time_dependent = true;

  Point operator()(double x, double y, double t) const { return evaluator(x, y, t); }
  Point operator()(const Point& p, double t) const { return evaluator(p.x(), p.y(), t); }
};

using SpaceTimeFunction = std::function<double(double x, double y, double t)>;
using SpaceFunction = std::function<double(double x, double y)>;

struct ProblemSetup {
  VelocityField velocity;
  SpaceTimeFunction source;        // f; empty means f == 0
  SpaceFunction initial;           // c0
  SpaceTimeFunction inflow_value;  // c_b on the inflow boundary; empty means 0
  double final_time = 1.0;
  Index n_slabs = 1;

  double tau() const { return final_time / static_cast<double>(n_slabs); }
  double slab_start(Index k) const { return static_cast<double>(k - 1) * tau(); }
  double slab_midpoint(Index k) const { return slab_start(k) + 0.5 * tau(); }
  double time_level(Index k) const { return static_cast<double>(k) * tau(); }
  bool has_source() const { return static_cast<bool>(source); }

  double inflow_at(double x, double y, double t) const {
    return inflow_value ? inflow_value(x, y, t) : 0.0;
  }

  /// Throws std::invalid_argument unless final_time > 0, n_slabs >= 1 and the
  /// velocity and initial condition are set.
  void validate() const;
};

struct SlottedCylinderParams {
  Point center{0.0, 0.5};
  double radius = 0.3;
  double slot_half_width = 0.05;
  double slot_top = 0.7;

  void validate() const;
};

double slotted_cylinder_initial(double x, double y, const SlottedCylinderParams& p = {});

/// Solid-body rotation u = (-y, x).
VelocityField rotation_velocity();

VelocityField uniform_velocity(const Point& u);

/// Central-difference divergence of the velocity at (x, y, t).
double numerical_divergence(const VelocityField& v, double x, double y, double t,
                            double step = 1e-5);

/// Rotating slotted cylinder on [-1, 1]^2 with zero inflow and f = 0.
ProblemSetup slotted_cylinder_setup(const SlottedCylinderParams& params, double final_time,
                                    Index n_slabs);

}  // namespace stils
