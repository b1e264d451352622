#include "stils/fields.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stils {

void ProblemSetup::validate() const {
  if (!(final_time > 0.0)) throw std::invalid_argument("final time must be positive");
  if (n_slabs < 1) throw std::invalid_argument("slab count must be at least 1");
  if (!velocity.evaluator) throw std::invalid_argument("velocity field is not set");
  if (!initial) throw std::invalid_argument("initial condition is not set");
}

void SlottedCylinderParams::validate() const {
  if (!(radius > 0.0)) throw std::invalid_argument("cylinder radius must be positive");
  if (!(slot_half_width < radius))
    throw std::invalid_argument("slot half width must be smaller than the radius");
}

double slotted_cylinder_initial(double x, double y, const SlottedCylinderParams& p) {
  const double dx = x - p.center.x();
  const double dy = y - p.center.y();
  const bool outside_slot = std::abs(dx) > p.slot_half_width || y > p.slot_top;
  return (outside_slot && std::hypot(dx, dy) <= p.radius) ? 1.0 : 0.0;
}

VelocityField rotation_velocity() {
  return {[](double x, double y, double) { return Point{-y, x}; }, true, false};
}

VelocityField uniform_velocity(const Point& u) {
  return {[u](double, double, double) { return u; }, true, false};
}

double numerical_divergence(const VelocityField& v, double x, double y, double t,
                            double step) {
  const double dudx = (v(x + step, y, t).x() - v(x - step, y, t).x()) / (2.0 * step);
  const double dvdy = (v(x, y + step, t).y() - v(x, y - step, t).y()) / (2.0 * step);
  return dudx + dvdy;
}

ProblemSetup slotted_cylinder_setup(const SlottedCylinderParams& params, double final_time,
                                    Index n_slabs) {
  params.validate();
  ProblemSetup setup;
  setup.velocity = rotation_velocity();
  setup.initial = [params](double x, double y) { return slotted_cylinder_initial(x, y, params); };
  setup.final_time = final_time;
  setup.n_slabs = n_slabs;
  setup.validate();
  return setup;
}

}  // namespace stils
