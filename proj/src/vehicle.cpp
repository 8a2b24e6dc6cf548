#include "memgrav/vehicle.hpp"

#include <cmath>
#include <stdexcept>

namespace memgrav {

void VehicleParams::validate() const {
  if (!(mass > 0.0)) throw std::invalid_argument("vehicle: mass must be > 0");
  if (!(Rv > 0.0)) throw std::invalid_argument("vehicle: Rv must be > 0");
  if (!(Lc > 0.0)) throw std::invalid_argument("vehicle: Lc must be > 0");
  if (!(speed > 0.0)) throw std::invalid_argument("vehicle: speed must be > 0");
  if (!(std::abs(dB) < Rv))
    throw std::invalid_argument("vehicle: |dB| must be < Rv");
}

VehicleParams VehicleParams::heavy() {
  VehicleParams p;
  p.mass = 0.160;
  p.Rv = 0.05;
  p.Lc = 0.01;
  return p;
}

VehicleParams VehicleParams::light() {
  VehicleParams p;
  p.mass = 0.045;
  p.Rv = 0.02;
  p.Lc = 0.01;
  return p;
}

double mechanical_constant(const VehicleParams& p) {
  return p.Lc * p.Lc / (p.Lc * p.Lc + 0.5 * p.Rv * p.Rv);
}

double epsilon(const VehicleParams& p) {
  return p.Lc * p.dB / (0.5 * p.Rv * p.Rv + p.Lc * p.Lc + p.dB * p.dB);
}

double k_of_gamma(const VehicleParams& p, double gamma) {
  return mechanical_constant(p) * p.g * std::sin(gamma) * std::cos(gamma);
}

double k_of_gradient(const VehicleParams& p, double grad_norm) {
  // sin(gamma) cos(gamma) with gamma = arctan(grad_norm)
  return mechanical_constant(p) * p.g * grad_norm /
         (1.0 + grad_norm * grad_norm);
}

PolarAccel accel_axisymmetric(const PolarState& state, double k_at_r) {
  if (state.r <= 0.0)
    throw std::domain_error("accel_axisymmetric: r must be positive");
  const double v = state.speed();
  if (v <= 0.0)
    throw std::domain_error("accel_axisymmetric: zero speed has no heading");
  const double sin_t = state.r * state.phidot / v;
  const double cos_t = state.rdot / v;
  const double a = k_at_r * sin_t;
  return {-a * sin_t, a * cos_t / state.r};
}

Vec2 accel_general(const PhysState& state, const Vec2& descent,
                   const VehicleParams& p, double eps) {
  const double v2 = state.velocity.squaredNorm();
  if (v2 <= 0.0)
    throw std::domain_error("accel_general: zero velocity has no heading");
  const double cross = descent.x() * state.velocity.y() -
                       descent.y() * state.velocity.x();
  const double dot = descent.dot(state.velocity);
  const double scale =
      mechanical_constant(p) * p.g * (cross + eps * dot) / v2;
  return scale * Vec2(state.velocity.y(), -state.velocity.x());
}

double bias_accel(const VehicleParams& p, double gamma, double theta) {
  return p.g * std::sin(gamma) * std::cos(theta) * epsilon(p);
}

}  // namespace memgrav
